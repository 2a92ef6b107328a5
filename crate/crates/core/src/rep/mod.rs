//! Representations of gl(n|m): fundamental generators, coproducts and the
//! antisymmetric-power module the supersymmetric chains are built on.

pub mod casimir;
pub mod hole;

use crate::graded::{GradedOperator, GradedSpace, Vector};
use crate::scalar::{Mode, Scalar};

pub use hole::HoleModule;

/// Fundamental representation space of gl(n|m) in the distinguished basis:
/// `n` even vectors followed by `m` odd ones.
pub fn fundamental_space(n: usize, m: usize) -> GradedSpace {
    GradedSpace::from_signature(n, m)
}

/// Elementary generator `E_ij` (1-based algebra indices) acting on the
/// fundamental space.
pub fn fundamental_generator(space: &GradedSpace, i: usize, j: usize, mode: Mode) -> GradedOperator {
    assert!(i >= 1 && j >= 1 && i <= space.dim() && j <= space.dim());
    GradedOperator::matrix_unit(space, space, i - 1, j - 1, mode)
}

/// Graded commutator `[A, B] = AB - (-1)^{|A||B|} BA`.
pub fn supercommutator(a: &GradedOperator, b: &GradedOperator) -> GradedOperator {
    let ab = a.mul(b);
    let ba = b.mul(a);
    if a.degree().is_odd() && b.degree().is_odd() {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

/// Two-site coproduct `X (x) 1 + G^{|X|} (x) X` in plain matrix form.
///
/// The arguments are the actions of the same abstract generator on the two
/// factors; they may live on different spaces.
pub fn coproduct(x_left: &GradedOperator, x_right: &GradedOperator) -> GradedOperator {
    assert_eq!(x_left.domain(), x_left.codomain(), "coproduct needs square factors");
    assert_eq!(x_right.domain(), x_right.codomain(), "coproduct needs square factors");
    assert_eq!(x_left.degree(), x_right.degree(), "coproduct degree mismatch");
    assert_eq!(x_left.mode(), x_right.mode());
    let mode = x_left.mode();
    let id_right = GradedOperator::identity(x_right.domain(), mode);
    let first = x_left.kron_plain(&id_right);
    let left_unit = if x_left.degree().is_odd() {
        GradedOperator::grading(x_left.domain(), mode)
    } else {
        GradedOperator::identity(x_left.domain(), mode)
    };
    first.add(&left_unit.kron_plain(x_right))
}

/// `L`-site coproduct of a square operator on one site.
pub fn coproduct_power(x: &GradedOperator, l: usize) -> GradedOperator {
    assert!(l >= 1);
    let mut acc = x.clone();
    for _ in 1..l {
        acc = coproduct(&acc, x);
    }
    acc
}

pub(crate) fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut num: i64 = 1;
    let mut den: i64 = 1;
    for i in 0..k.min(n - k) {
        num *= (n - i) as i64;
        den *= (i + 1) as i64;
    }
    num / den
}

/// All `(block1, block2, sign)` shuffles of `1..=a+b` into ascending blocks
/// of sizes `a` and `b`; the sign is the parity of the concatenation.
pub(crate) fn shuffles(a: usize, b: usize) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    let total = a + b;
    let mut out = Vec::new();
    // iterate over subsets of size a by bitmask; total stays tiny here
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != a {
            continue;
        }
        let mut block1 = Vec::with_capacity(a);
        let mut block2 = Vec::with_capacity(b);
        for v in 1..=total {
            if mask & (1 << (v - 1)) != 0 {
                block1.push(v);
            } else {
                block2.push(v);
            }
        }
        let concat: Vec<usize> = block1.iter().chain(block2.iter()).cloned().collect();
        let mut inversions = 0usize;
        for i in 0..concat.len() {
            for j in (i + 1)..concat.len() {
                if concat[i] > concat[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        out.push((block1, block2, sign));
    }
    out
}

fn permutations(t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(t - 1) {
        for pos in 0..t {
            let mut p = Vec::with_capacity(t);
            p.extend(rest.iter().take(pos));
            p.push(t - 1);
            p.extend(rest.iter().skip(pos));
            out.push(p);
        }
    }
    out
}

/// Graded antisymmetrization of a product of basis vectors, normalized by
/// `1/t!` where `t` is the number of factors.
pub fn antisymmetrize(factor: &GradedSpace, indices: &[usize], mode: Mode) -> Vector {
    let t = indices.len();
    assert!(t >= 1, "empty wedge");
    let target = factor.tensor_power(t);
    let mut out = Vector::zero(target.clone(), mode);
    let factorial: i64 = (1..=t as i64).product();
    let norm = &Scalar::one(mode) / &match mode {
        Mode::Exact => Scalar::int(factorial),
        Mode::Float => Scalar::from_f64(factorial as f64),
    };
    for perm in permutations(t) {
        // perm[i] is the destination slot of factor i
        let mut inversions = 0usize;
        let mut odd_crossings = 0usize;
        for i in 0..t {
            for j in (i + 1)..t {
                if perm[i] > perm[j] {
                    inversions += 1;
                    if factor.parity(indices[i]).is_odd() && factor.parity(indices[j]).is_odd() {
                        odd_crossings += 1;
                    }
                }
            }
        }
        let mut dest = vec![0usize; t];
        for (i, &slot) in perm.iter().enumerate() {
            dest[slot] = indices[i];
        }
        let mut flat = 0usize;
        for &d in &dest {
            flat = flat * factor.dim() + d;
        }
        let total_sign = inversions + odd_crossings;
        let contrib = if total_sign % 2 == 0 {
            norm.clone()
        } else {
            -&norm
        };
        out.add_to(flat, &contrib);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Parity;

    #[test]
    fn supercommutator_of_matrix_units() {
        // [E_ij, E_kl] = d_jk E_il - (-1)^{(|i|+|j|)(|k|+|l|)} d_il E_kj
        let v = fundamental_space(2, 1);
        let dim = 3usize;
        for i in 1..=dim {
            for j in 1..=dim {
                for k in 1..=dim {
                    for l in 1..=dim {
                        let a = fundamental_generator(&v, i, j, Mode::Exact);
                        let b = fundamental_generator(&v, k, l, Mode::Exact);
                        let lhs = supercommutator(&a, &b);
                        let pa = a.degree().bit() as i64;
                        let pb = b.degree().bit() as i64;
                        let mut rhs = GradedOperator::new_zero(
                            v.clone(),
                            v.clone(),
                            a.degree() ^ b.degree(),
                            Mode::Exact,
                        );
                        if j == k {
                            rhs = rhs.add(&fundamental_generator(&v, i, l, Mode::Exact));
                        }
                        if i == l {
                            let sgn = crate::scalar::sign_scalar(pa * pb + 1, Mode::Exact);
                            rhs = rhs.add(&fundamental_generator(&v, k, j, Mode::Exact).scale(&sgn));
                        }
                        assert_eq!(lhs, rhs, "i={i} j={j} k={k} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn coproduct_is_a_homomorphism() {
        // Delta([X, Y]) = [Delta(X), Delta(Y)] on two sites
        let v = fundamental_space(2, 1);
        let pairs = [(1usize, 3usize), (3, 2), (1, 2), (2, 2)];
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                let x = fundamental_generator(&v, i, j, Mode::Exact);
                let y = fundamental_generator(&v, k, l, Mode::Exact);
                let dx = coproduct(&x, &x);
                let dy = coproduct(&y, &y);
                let lhs = supercommutator(&dx, &dy);
                let xy = supercommutator(&x, &y);
                let rhs = coproduct(&xy, &xy);
                assert_eq!(lhs, rhs, "X=E{i}{j} Y=E{k}{l}");
            }
        }
    }

    #[test]
    fn coproduct_power_expands_site_by_site() {
        let v = fundamental_space(1, 1);
        let q = fundamental_generator(&v, 1, 2, Mode::Exact); // odd
        let d3 = coproduct_power(&q, 3);
        let id = GradedOperator::identity(&v, Mode::Exact);
        let g = GradedOperator::grading(&v, Mode::Exact);
        let expect = q
            .kron_plain(&id)
            .kron_plain(&id)
            .add(&g.kron_plain(&q).kron_plain(&id))
            .add(&g.kron_plain(&g).kron_plain(&q));
        assert_eq!(d3, expect);
        assert_eq!(d3.degree(), Parity::Odd);
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert!(s.contains(&(vec![1], vec![2], 1)));
        assert!(s.contains(&(vec![2], vec![1], -1)));
        let s21 = shuffles(2, 1);
        assert_eq!(s21.len(), 3);
        assert!(s21.contains(&(vec![1, 2], vec![3], 1)));
        assert!(s21.contains(&(vec![1, 3], vec![2], -1)));
        assert!(s21.contains(&(vec![2, 3], vec![1], 1)));
    }

    #[test]
    fn wedge_of_even_vectors_alternates() {
        let v = fundamental_space(3, 1);
        let w = antisymmetrize(&v, &[0, 1], Mode::Exact);
        // (e1 ^ e2) = (e1 (x) e2 - e2 (x) e1)/2
        assert_eq!(w.get(0 * 4 + 1), Scalar::ratio(1, 2));
        assert_eq!(w.get(1 * 4 + 0), Scalar::ratio(-1, 2));
        let flipped = antisymmetrize(&v, &[1, 0], Mode::Exact);
        assert_eq!(flipped, w.neg());
        // repeated even index vanishes
        assert!(antisymmetrize(&v, &[1, 1], Mode::Exact).is_zero());
    }

    #[test]
    fn wedge_of_repeated_odd_vector_survives() {
        let v = fundamental_space(3, 1);
        let w = antisymmetrize(&v, &[3, 3, 3], Mode::Exact);
        let mut expect = Vector::zero(v.tensor_power(3), Mode::Exact);
        expect.set(3 * 16 + 3 * 4 + 3, Scalar::int(1));
        assert_eq!(w, expect);
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
