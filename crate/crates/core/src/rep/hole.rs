//! The (n-1)-fold antisymmetric power of the fundamental gl(n|1) module,
//! organized in the hole basis: states are labelled by the nonempty set of
//! missing even directions, and each extra hole costs one fermionic factor.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{antisymmetrize, binomial, coproduct_power, shuffles, supercommutator};
use crate::graded::{BilinearForm, GradedOperator, GradedSpace, Parity, Vector};
use crate::scalar::{Mode, Scalar};

/// gl(n|1) module in the hole basis: a state `|k_1 < ... < k_r>` marks the
/// even directions `k_1..k_r` as absent, carries parity `(r-1) mod 2`, and is
/// realized inside the fundamental tensor power by wedging the remaining even
/// vectors with `r-1` copies of the odd one.
#[derive(Clone, Debug)]
pub struct HoleModule {
    n: usize,
    states: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    space: GradedSpace,
    fundamental: GradedSpace,
}

fn subsets_of_size(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for v in start..=n {
            current.push(v);
            rec(n, r, v + 1, current, out);
            current.pop();
        }
    }
    rec(n, r, 1, &mut current, &mut out);
    out
}

impl HoleModule {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "hole basis needs n >= 2");
        let mut states = Vec::new();
        for r in 1..=n {
            states.extend(subsets_of_size(n, r));
        }
        let index: HashMap<Vec<usize>, usize> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let parities: Vec<Parity> = states
            .iter()
            .map(|s| Parity::from_bit((s.len() - 1) % 2))
            .collect();
        HoleModule {
            n,
            states,
            index,
            space: GradedSpace::new(parities),
            fundamental: GradedSpace::from_signature(n, 1),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn fundamental(&self) -> &GradedSpace {
        &self.fundamental
    }

    /// Hole labels of the basis state `idx`, ascending, 1-based.
    pub fn holes(&self, idx: usize) -> &[usize] {
        &self.states[idx]
    }

    pub fn state_index(&self, holes: &[usize]) -> usize {
        *self
            .index
            .get(holes)
            .unwrap_or_else(|| panic!("no hole state {holes:?}"))
    }

    fn new_op(&self, degree: Parity) -> GradedOperator {
        GradedOperator::new_zero(self.space.clone(), self.space.clone(), degree, Mode::Exact)
    }

    /// `E_{k,k+1}` for `1 <= k <= n`.
    fn simple_raising(&self, k: usize) -> GradedOperator {
        if k < self.n {
            let mut op = self.new_op(Parity::Even);
            for (col, holes) in self.states.iter().enumerate() {
                if holes.contains(&k) && !holes.contains(&(k + 1)) {
                    let moved: Vec<usize> = holes
                        .iter()
                        .map(|&h| if h == k { k + 1 } else { h })
                        .collect();
                    op.set(self.state_index(&moved), col, Scalar::int(1));
                }
            }
            op
        } else {
            // E_{n,n+1} trades the hole at n for one fermionic factor
            let mut op = self.new_op(Parity::Odd);
            for (col, holes) in self.states.iter().enumerate() {
                let r = holes.len();
                if r >= 2 && *holes.last().unwrap() == self.n {
                    let shorter = holes[..r - 1].to_vec();
                    op.set(self.state_index(&shorter), col, Scalar::int(r as i64 - 1));
                }
            }
            op
        }
    }

    /// `E_{k+1,k}` for `1 <= k <= n`.
    fn simple_lowering(&self, k: usize) -> GradedOperator {
        if k < self.n {
            let mut op = self.new_op(Parity::Even);
            for (col, holes) in self.states.iter().enumerate() {
                if holes.contains(&(k + 1)) && !holes.contains(&k) {
                    let mut moved: Vec<usize> = holes
                        .iter()
                        .map(|&h| if h == k + 1 { k } else { h })
                        .collect();
                    moved.sort_unstable();
                    op.set(self.state_index(&moved), col, Scalar::int(1));
                }
            }
            op
        } else {
            let mut op = self.new_op(Parity::Odd);
            for (col, holes) in self.states.iter().enumerate() {
                if !holes.contains(&self.n) {
                    let mut longer = holes.clone();
                    longer.push(self.n);
                    op.set(self.state_index(&longer), col, Scalar::int(1));
                }
            }
            op
        }
    }

    /// Diagonal generator `E_ii` for `1 <= i <= n+1`.
    fn cartan(&self, i: usize) -> GradedOperator {
        let values: Vec<Scalar> = self
            .states
            .iter()
            .map(|holes| {
                let v = if i <= self.n {
                    i64::from(!holes.contains(&i))
                } else {
                    holes.len() as i64 - 1
                };
                Scalar::int(v)
            })
            .collect();
        GradedOperator::from_diagonal(&self.space, &values, Mode::Exact)
    }

    /// Action of `E_ij` (1-based, `1 <= i,j <= n+1`). Non-simple generators
    /// are resolved through `E_ij = [E_ik, E_kj]` with `k` next to `j`.
    pub fn generator(&self, i: usize, j: usize) -> GradedOperator {
        assert!(i >= 1 && j >= 1 && i <= self.n + 1 && j <= self.n + 1);
        if i == j {
            self.cartan(i)
        } else if j == i + 1 {
            self.simple_raising(i)
        } else if i == j + 1 {
            self.simple_lowering(j)
        } else if j > i {
            supercommutator(&self.generator(i, j - 1), &self.generator(j - 1, j))
        } else {
            supercommutator(&self.generator(i, j + 1), &self.generator(j + 1, j))
        }
    }

    /// Action of `E_ij` on the `l`-fold tensor power of the module.
    pub fn generator_on_power(&self, i: usize, j: usize, l: usize) -> GradedOperator {
        coproduct_power(&self.generator(i, j), l)
    }

    /// Isometric realization inside the fundamental tensor power: the state
    /// with holes `k_1..k_r` maps to the wedge of the surviving even vectors
    /// (ascending) with `r-1` copies of the odd vector.
    pub fn embedding(&self) -> GradedOperator {
        let target = self.fundamental.tensor_power(self.n - 1);
        let mut out = GradedOperator::new_zero(
            self.space.clone(),
            target,
            Parity::Even,
            Mode::Exact,
        );
        for (col, holes) in self.states.iter().enumerate() {
            let mut factors: Vec<usize> = (1..=self.n)
                .filter(|k| !holes.contains(k))
                .map(|k| k - 1)
                .collect();
            for _ in 1..holes.len() {
                factors.push(self.n);
            }
            let wedge = antisymmetrize(&self.fundamental, &factors, Mode::Exact);
            for (row, val) in wedge.iter() {
                out.set(row, col, val.clone());
            }
        }
        out
    }

    /// Invariant bilinear form on the module, pulled back from the standard
    /// form on the fundamental tensor power through the embedding.
    pub fn form(&self) -> BilinearForm {
        let emb = self.embedding();
        let ambient =
            BilinearForm::standard(&self.fundamental, Mode::Exact).tensor_power(self.n - 1);
        let diag: Vec<Scalar> = (0..self.dim())
            .map(|idx| {
                let col = emb.apply(&Vector::basis(&self.space, idx, Mode::Exact));
                ambient.pair(&col, &col)
            })
            .collect();
        BilinearForm::new(self.space.clone(), diag, Mode::Exact)
    }

    /// Weight of the module's highest state `|n>`: `(1,...,1,0 | 0)`.
    pub fn weight(&self) -> Vec<BigRational> {
        let mut w = vec![BigRational::one(); self.n - 1];
        w.push(BigRational::zero());
        w.push(BigRational::zero());
        w
    }

    /// Highest weight vectors `v_0..v_{n-1}` of the two-site product, one per
    /// irreducible component, ordered by the Casimir eigenvalue `i(i+1)`.
    pub fn highest_weight_vectors(&self) -> Vec<Vector> {
        let two = self.space.tensor(&self.space);
        let dim = self.dim();
        let mut out = Vec::with_capacity(self.n);
        let top = self.state_index(&[self.n]);
        let mut v0 = Vector::zero(two.clone(), Mode::Exact);
        v0.set(top * dim + top, Scalar::int(1));
        out.push(v0);
        for i in 1..self.n {
            let mut v = Vector::zero(two.clone(), Mode::Exact);
            for m in 1..=i {
                let outer = if (i * (m - 1)) % 2 == 0 { 1 } else { -1 };
                let coeff = outer * binomial(i - 1, m - 1);
                for (block1, block2, sign) in shuffles(m, i + 1 - m) {
                    let left: Vec<usize> = block1.iter().map(|&v| self.n - i - 1 + v).collect();
                    let right: Vec<usize> = block2.iter().map(|&v| self.n - i - 1 + v).collect();
                    let flat = self.state_index(&left) * dim + self.state_index(&right);
                    v.add_to(flat, &Scalar::int(coeff * sign));
                }
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::casimir::component_highest_weights;
    use crate::rep::{coproduct, fundamental_generator};
    use num_traits::ToPrimitive;

    #[test]
    fn basis_enumeration_and_parity() {
        let h = HoleModule::new(3);
        assert_eq!(h.dim(), 7);
        let expect: Vec<Vec<usize>> = vec![
            vec![1],
            vec![2],
            vec![3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
            vec![1, 2, 3],
        ];
        for (i, holes) in expect.iter().enumerate() {
            assert_eq!(h.holes(i), holes.as_slice());
            assert_eq!(h.state_index(holes), i);
        }
        assert_eq!(h.space().parity(0), Parity::Even);
        assert_eq!(h.space().parity(3), Parity::Odd);
        assert_eq!(h.space().parity(6), Parity::Even);
    }

    #[test]
    fn two_holes_match_the_fundamental_of_gl21() {
        // for n = 2 the module is the fundamental itself, permuted:
        // |1> = e_2, |2> = e_1, |1,2> = e_3
        let h = HoleModule::new(2);
        let emb = h.embedding();
        let map = [1usize, 0, 2];
        for (hole_idx, fund_idx) in map.iter().enumerate() {
            let col = emb.apply(&Vector::basis(h.space(), hole_idx, Mode::Exact));
            let expect = Vector::basis(h.fundamental(), *fund_idx, Mode::Exact);
            assert_eq!(col, expect);
        }
    }

    #[test]
    fn embedding_intertwines_generators() {
        for n in 2..=4 {
            let h = HoleModule::new(n);
            let emb = h.embedding();
            for i in 1..=n + 1 {
                for j in 1..=n + 1 {
                    let fund = fundamental_generator(h.fundamental(), i, j, Mode::Exact);
                    let ambient = coproduct_power(&fund, n - 1);
                    let lhs = ambient.mul(&emb);
                    let rhs = emb.mul(&h.generator(i, j));
                    assert_eq!(lhs, rhs, "n={n} E_{i}{j}");
                }
            }
        }
    }

    #[test]
    fn generators_satisfy_the_bracket_relations() {
        let n = 3;
        let h = HoleModule::new(n);
        let d = n + 1;
        for i in 1..=d {
            for j in 1..=d {
                for k in 1..=d {
                    for l in 1..=d {
                        let a = h.generator(i, j);
                        let b = h.generator(k, l);
                        let lhs = supercommutator(&a, &b);
                        let mut rhs = GradedOperator::new_zero(
                            h.space().clone(),
                            h.space().clone(),
                            a.degree() ^ b.degree(),
                            Mode::Exact,
                        );
                        if j == k {
                            rhs = rhs.add(&h.generator(i, l));
                        }
                        if i == l {
                            let pa = a.degree().bit() as i64;
                            let pb = b.degree().bit() as i64;
                            let sgn = crate::scalar::sign_scalar(pa * pb + 1, Mode::Exact);
                            rhs = rhs.add(&h.generator(k, j).scale(&sgn));
                        }
                        assert_eq!(lhs, rhs, "[E_{i}{j}, E_{k}{l}]");
                    }
                }
            }
        }
    }

    #[test]
    fn top_state_is_highest_with_the_expected_weight() {
        for n in 2..=5 {
            let h = HoleModule::new(n);
            let top = Vector::basis(h.space(), h.state_index(&[n]), Mode::Exact);
            for k in 1..=n {
                assert!(h.generator(k, k + 1).apply(&top).is_zero(), "n={n} k={k}");
            }
            let weight = h.weight();
            for i in 1..=n + 1 {
                let ev = h.generator(i, i).apply(&top);
                let expect = top.scale(&Scalar::from_rational(weight[i - 1].clone()));
                assert_eq!(ev, expect, "n={n} E_{i}{i}");
            }
        }
    }

    #[test]
    fn pulled_back_form_is_diagonal_with_known_norms() {
        for n in 2..=4 {
            let h = HoleModule::new(n);
            let emb = h.embedding();
            let ambient =
                BilinearForm::standard(h.fundamental(), Mode::Exact).tensor_power(n - 1);
            let cols: Vec<Vector> = (0..h.dim())
                .map(|i| emb.apply(&Vector::basis(h.space(), i, Mode::Exact)))
                .collect();
            let nf: i64 = (1..=(n as i64 - 1)).product();
            for i in 0..h.dim() {
                for j in 0..h.dim() {
                    let p = ambient.pair(&cols[i], &cols[j]);
                    if i != j {
                        assert!(p.is_zero(), "n={n} off-diagonal ({i},{j})");
                    } else {
                        let r = h.holes(i).len() as i64;
                        let sign = if ((r - 2) * (r - 1) / 2) % 2 == 0 { 1 } else { -1 };
                        let rf: i64 = (1..=(r - 1)).product();
                        assert_eq!(p, Scalar::ratio(sign * rf, nf), "n={n} state {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn highest_weight_vectors_are_annihilated_by_raising_operators() {
        for n in 2..=4 {
            let h = HoleModule::new(n);
            let vs = h.highest_weight_vectors();
            assert_eq!(vs.len(), n);
            let weights = component_highest_weights(n);
            for (i, v) in vs.iter().enumerate() {
                assert!(!v.is_zero());
                for k in 1..=n {
                    let raise = coproduct(&h.generator(k, k + 1), &h.generator(k, k + 1));
                    assert!(raise.apply(v).is_zero(), "n={n} component {i} E_{k}{}", k + 1);
                }
                for c in 1..=n + 1 {
                    let cart = coproduct(&h.generator(c, c), &h.generator(c, c));
                    let lambda = weights[i][c - 1].to_i64().unwrap();
                    assert_eq!(
                        cart.apply(v),
                        v.scale(&Scalar::int(lambda)),
                        "n={n} component {i} E_{c}{c}"
                    );
                }
            }
        }
    }
}
