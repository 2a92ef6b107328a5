//! R-matrices for the hole chain: the fundamental degree-one solution of the
//! Yang-Baxter equation, the fused intertwiner between two hole modules, the
//! antisymmetrizer built from fundamental R-matrices at special points,
//! monodromy/transfer matrices, and the spectral route to the integrable
//! Hamiltonian density. This route never touches the supercharge; agreement
//! of the two densities is a theorem the tests check, not a shared code path.

use crate::error::{Error, Result};
use crate::graded::{
    decode_multi, encode_multi, BilinearForm, GradedOperator, GradedSpace, Poly, PolyOperator,
    PolyVector, Vector,
};
use crate::rep::HoleModule;
use crate::scalar::{Mode, Scalar};
use crate::supercharge::harmonic_number;

/// `R(u) = u/p + P` on two copies of `space`, with `P` the graded
/// permutation. Regular (`R(0) = P`) and linear in `u`; the spectral unit
/// `p` sets where the symmetric and antisymmetric projectors appear:
/// `R(p) = 2 Pi_sym` and `R(-p) = -2 Pi_antisym`.
pub fn fundamental_r(space: &GradedSpace, p: &Scalar) -> PolyOperator {
    assert!(!p.is_zero(), "spectral unit p must be nonzero");
    let mode = p.mode();
    let perm = GradedOperator::graded_swap(space, space, mode);
    let two = space.tensor(space);
    let slope = GradedOperator::identity(&two, mode).scale(&p.inv());
    PolyOperator::linear(perm, slope)
}

/// Embeds a square operator on `factors[i] (x) factors[j]` into the full
/// tensor product of `factors`, acting as the identity elsewhere. Koszul
/// signs come from conjugating with graded factor permutations.
pub fn embed_pair(
    op: &GradedOperator,
    factors: &[&GradedSpace],
    i: usize,
    j: usize,
) -> GradedOperator {
    let t = factors.len();
    assert!(i < j && j < t, "pair slots ({i}, {j}) out of range for {t} factors");
    assert_eq!(
        op.domain(),
        &factors[i].tensor(factors[j]),
        "operator does not act on the selected pair of factors"
    );
    assert_eq!(op.codomain(), op.domain(), "pair operator must be square");
    if t == 2 {
        return op.clone();
    }
    let mode = op.mode();
    let mut perm = vec![usize::MAX; t];
    perm[i] = 0;
    perm[j] = 1;
    let mut next = 2;
    for a in 0..t {
        if a != i && a != j {
            perm[a] = next;
            next += 1;
        }
    }
    let to_front = GradedOperator::permute_factors(factors, &perm, mode);
    let mut dest: Vec<&GradedSpace> = vec![factors[i], factors[j]];
    dest.extend((0..t).filter(|&a| a != i && a != j).map(|a| factors[a]));
    let rest = GradedSpace::tensor_all(&dest[2..]);
    let big = op.kron_graded(&GradedOperator::identity(&rest, mode));
    let mut inv = vec![0usize; t];
    for (a, &s) in perm.iter().enumerate() {
        inv[s] = a;
    }
    let back = GradedOperator::permute_factors(&dest, &inv, mode);
    back.mul(&big).mul(&to_front)
}

/// Coefficient-wise [`embed_pair`] for operator polynomials.
pub fn embed_pair_poly(
    op: &PolyOperator,
    factors: &[&GradedSpace],
    i: usize,
    j: usize,
) -> PolyOperator {
    PolyOperator::from_coeffs(
        op.coeffs()
            .iter()
            .map(|c| embed_pair(c, factors, i, j))
            .collect(),
    )
}

/// Checks `R12(u) R13(u+v) R23(v) = R23(v) R13(u+v) R12(u)` on three copies
/// of `site` at every sample pair, exactly. Both sides are polynomials of
/// bounded degree in `u` and `v`, so a generic grid of `(deg+1)^2` sample
/// pairs certifies the identity; a failure reports the largest residual.
pub fn ybe_check(r: &PolyOperator, site: &GradedSpace, samples: &[(Scalar, Scalar)]) -> Result<()> {
    let factors = [site, site, site];
    let r12 = embed_pair_poly(r, &factors, 0, 1);
    let r13 = embed_pair_poly(r, &factors, 0, 2);
    let r23 = embed_pair_poly(r, &factors, 1, 2);
    for (u, v) in samples {
        let uv = u + v;
        let a12 = r12.eval(u);
        let a13 = r13.eval(&uv);
        let a23 = r23.eval(v);
        let lhs = a12.mul(&a13).mul(&a23);
        let rhs = a23.mul(&a13).mul(&a12);
        if lhs != rhs {
            let residual = lhs.max_entry_diff(&rhs);
            return Err(Error::IdentityFailed(format!(
                "Yang-Baxter residual {residual:.3e} at (u, v) = ({u}, {v})"
            )));
        }
    }
    Ok(())
}

/// Projector onto the (n-1)-fold graded antisymmetric power of the
/// fundamental gl(n|1) space, built as the ordered product of fundamental
/// R-matrices at the special points `p(i-j)` with the combinatorial
/// prefactor that makes the product idempotent.
pub fn antisym_projector_by_fusion(n: usize, p: &Scalar) -> GradedOperator {
    assert!(n >= 2, "need n >= 2");
    assert!(!p.is_zero(), "spectral unit p must be nonzero");
    let mode = p.mode();
    let site = crate::rep::fundamental_space(n, 1);
    let t = n - 1;
    let factors: Vec<&GradedSpace> = vec![&site; t];
    let r = fundamental_r(&site, p);
    let power = site.tensor_power(t);
    let mut acc = GradedOperator::identity(&power, mode);
    for i in 0..t {
        for j in (i + 1)..t {
            let arg = p * &Scalar::int(i as i64 - j as i64);
            acc = acc.mul(&embed_pair(&r.eval(&arg), &factors, i, j));
        }
    }
    let mut fact_prod = 1i64;
    let mut factorial = 1i64;
    for k in 1..=t as i64 {
        factorial *= k;
        fact_prod *= factorial;
    }
    let sign = if (t * t.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
    let prefactor = Scalar::ratio(sign, fact_prod);
    let prefactor = match mode {
        Mode::Exact => prefactor,
        Mode::Float => Scalar::from_complex(prefactor.to_complex()),
    };
    acc.scale(&prefactor)
}

/// Extracts the scalar `c` with `out = c v`, failing if `out` is not
/// proportional to the nonzero reference vector.
fn proportionality(out: &Vector, v: &Vector) -> Result<Scalar> {
    let (i0, base) = v.iter().next().expect("reference vector must be nonzero");
    let c = &out.get(i0) / base;
    if out != &v.scale(&c) {
        return Err(Error::UnexpectedSpectrum(
            "vector is not proportional to the reference state".into(),
        ));
    }
    Ok(c)
}

/// Polynomial analogue of [`proportionality`]: `out(u) = c(u) v`.
fn proportionality_poly(out: &PolyVector, v: &Vector) -> Result<Poly> {
    let (i0, base) = v.iter().next().expect("reference vector must be nonzero");
    let c = out.get(i0).scale(&base.inv());
    let mut expect = PolyVector::zero(v.space().clone(), v.mode());
    for (i, val) in v.iter() {
        expect.set(i, c.scale(val));
    }
    if out != &expect {
        return Err(Error::UnexpectedSpectrum(
            "column is not proportional to the reference state".into(),
        ));
    }
    Ok(c)
}

/// Swaps tensor slots `i < j` of a basis index, returning the new flat index
/// and whether the Koszul sign is negative.
fn swap_slots(factors: &[&GradedSpace], i: usize, j: usize, flat: usize) -> (usize, bool) {
    let mut idx = decode_multi(factors, flat);
    let pi = factors[i].parity(idx[i]).is_odd();
    let pj = factors[j].parity(idx[j]).is_odd();
    let mut exponent = usize::from(pi && pj);
    if pi != pj {
        exponent += ((i + 1)..j)
            .filter(|&k| factors[k].parity(idx[k]).is_odd())
            .count();
    }
    idx.swap(i, j);
    (encode_multi(factors, &idx), exponent % 2 == 1)
}

/// Applies the graded permutation of slots `i < j` to a sparse vector.
fn swap_factor(v: &Vector, factors: &[&GradedSpace], i: usize, j: usize) -> Vector {
    let mut out = Vector::zero(v.space().clone(), v.mode());
    for (flat, val) in v.iter() {
        let (dest, neg) = swap_slots(factors, i, j, flat);
        out.add_to(dest, &if neg { -val } else { val.clone() });
    }
    out
}

/// Applies the graded permutation of slots `i < j` to a polynomial vector.
fn swap_factor_poly(v: &PolyVector, factors: &[&GradedSpace], i: usize, j: usize) -> PolyVector {
    let mut out = PolyVector::zero(v.space().clone(), Mode::Exact);
    for (flat, poly) in v.iter() {
        let (dest, neg) = swap_slots(factors, i, j, flat);
        out.add_to(dest, &if neg { poly.neg() } else { poly.clone() });
    }
    out
}

/// Fused R-matrix intertwining two copies of the hole module. The ordered
/// product of fundamental R-matrices, sandwiched between the antisymmetric
/// subspaces of the two (n-1)-fold blocks, is restricted to hole (x) hole by
/// the isometric embedding and its form-adjoint; the remaining overall
/// scalar polynomial is divided out so that `R(0)` is the graded
/// permutation.
///
/// Everything is held column-wise so the ambient tensor power, whose
/// dimension grows as `(n+1)^{2(n-1)}`, is never materialized as a matrix.
pub struct FusedR {
    hole: HoleModule,
    p: Scalar,
    emb_cols: Vec<Vector>,
    project: GradedOperator,
    /// Middle factors `(slot_i, slot_j, shift)` meaning `R_{ij}(u + shift)`,
    /// stored in application order (rightmost factor of the product first).
    middle: Vec<(usize, usize, Scalar)>,
    /// Scalar polynomial dividing the raw sandwiched product. It vanishes
    /// at u = 0 to order n - 2, so the raw product degenerates at the very
    /// point where the normalized R-matrix is regular.
    norm: Poly,
    /// Multiplicity of the normalization's root at u = 0.
    mult: usize,
    /// Graded permutation on hole (x) hole.
    perm: GradedOperator,
    /// Log-derivative calibration `alpha K + beta` fixed by the lowest two
    /// Casimir components.
    alpha: Scalar,
    beta: Scalar,
}

impl FusedR {
    pub fn new(n: usize, p: &Scalar) -> Result<FusedR> {
        assert!(n >= 2, "need n >= 2");
        assert!(!p.is_zero(), "spectral unit p must be nonzero");
        assert_eq!(p.mode(), Mode::Exact, "fusion is exact-only");
        let hole = HoleModule::new(n);
        let e = hole.embedding();
        let emb_cols: Vec<Vector> = (0..hole.dim())
            .map(|i| e.apply(&Vector::basis(hole.space(), i, Mode::Exact)))
            .collect();
        let ambient_form =
            BilinearForm::standard(hole.fundamental(), Mode::Exact).tensor_power(n - 1);
        let e_adj = e.superadjoint(&hole.form(), &ambient_form);
        let project = e_adj.kron_graded(&e_adj);

        // middle product, displayed with rows i = 1..n-1 left to right and
        // columns j = 2n-2 down to n inside each row; the factor on slots
        // (i, j) carries the argument u + (j - i - (n-1)) p
        let mut middle = Vec::new();
        for i in 1..n {
            for j in ((n)..=(2 * n - 2)).rev() {
                let shift = p * &Scalar::int(j as i64 - i as i64 - (n as i64 - 1));
                middle.push((i - 1, j - 1, shift));
            }
        }
        middle.reverse();

        let perm = GradedOperator::graded_swap(hole.space(), hole.space(), Mode::Exact);
        let mut fused = FusedR {
            hole,
            p: p.clone(),
            emb_cols,
            project,
            middle,
            norm: Poly::constant(Scalar::one(Mode::Exact)),
            mult: 0,
            perm,
            alpha: Scalar::zero(Mode::Exact),
            beta: Scalar::zero(Mode::Exact),
        };

        // the raw product acts on the top state (x) top state by a scalar
        // polynomial; dividing it by the expected eigenpolynomial of the
        // fully symmetric component gives the overall normalization
        let top = fused.hole.state_index(&[n]);
        let dim = fused.hole.dim();
        let two = fused.hole.space().tensor(fused.hole.space());
        let mut reference = Vector::zero(two, Mode::Exact);
        reference.set(top * dim + top, Scalar::one(Mode::Exact));
        let col = fused.raw_column_poly(top, top);
        let c = proportionality_poly(&col, &reference)?;
        let roots: Vec<Scalar> = (1..n).map(|l| -&(p * &Scalar::int(l as i64))).collect();
        let denom = Poly::from_roots(Mode::Exact, &roots, &Scalar::one(Mode::Exact));
        let mut scale = Scalar::one(Mode::Exact);
        for l in 1..n as i64 {
            scale = &scale * &Scalar::int(l);
        }
        scale = &scale * &p.pow(n as u32 - 1);
        fused.norm = c.scale(&scale).div_exact(&denom)?;
        fused.mult = fused
            .norm
            .coeffs()
            .iter()
            .take_while(|c| c.is_zero())
            .count();

        let (alpha, beta) = fused.affine_constants()?;
        fused.alpha = alpha;
        fused.beta = beta;
        Ok(fused)
    }

    pub fn hole(&self) -> &HoleModule {
        &self.hole
    }

    /// Scalar polynomial that was divided out of the raw sandwiched product.
    pub fn normalization(&self) -> &Poly {
        &self.norm
    }

    fn factor_list(&self) -> Vec<&GradedSpace> {
        vec![self.hole.fundamental(); 2 * (self.hole.n() - 1)]
    }

    fn embedded(&self, v: &Vector) -> Vector {
        let ambient = self.hole.fundamental().tensor_power(2 * (self.hole.n() - 1));
        let mut out = Vector::zero(ambient, Mode::Exact);
        let dim = self.hole.dim();
        for (flat, val) in v.iter() {
            let (a, b) = (flat / dim, flat % dim);
            out = out.add(&self.emb_cols[a].tensor(&self.emb_cols[b]).scale(val));
        }
        out
    }

    /// Raw sandwiched product applied to the embedded basis column `(a, b)`,
    /// kept symbolic in `u`.
    fn raw_column_poly(&self, a: usize, b: usize) -> PolyVector {
        let factors = self.factor_list();
        let start = self.emb_cols[a].tensor(&self.emb_cols[b]);
        let mut pv = PolyVector::from_vector(&start);
        let pinv = self.p.inv();
        for (i, j, s) in &self.middle {
            // ((u + s)/p) v + P_ij v
            let lin = Poly::new(Mode::Exact, vec![s * &pinv, pinv.clone()]);
            pv = pv.scale_poly(&lin).add(&swap_factor_poly(&pv, &factors, *i, *j));
        }
        pv.apply_op(&self.project)
    }

    /// Taylor coefficients at `u = 0`, up to the given order, of the raw
    /// product applied to a two-site hole vector, by forward jet
    /// propagation through the factor chain.
    fn raw_jet(&self, v: &Vector, order: usize) -> Vec<Vector> {
        let factors = self.factor_list();
        let pinv = self.p.inv();
        let first = self.embedded(v);
        let ambient = first.space().clone();
        let mut jets: Vec<Vector> = vec![first];
        jets.resize_with(order + 1, || Vector::zero(ambient.clone(), Mode::Exact));
        for (i, j, s) in &self.middle {
            let c0 = s * &pinv;
            let mut next = Vec::with_capacity(order + 1);
            for k in 0..=order {
                let mut w = jets[k].scale(&c0).add(&swap_factor(&jets[k], &factors, *i, *j));
                if k > 0 {
                    w = w.add(&jets[k - 1].scale(&pinv));
                }
                next.push(w);
            }
            jets = next;
        }
        jets.iter().map(|w| self.project.apply(w)).collect()
    }

    /// `K v` with `K = R'(0) P` for the normalized fused R-matrix. The raw
    /// sandwiched product vanishes at `u = 0` to the order of the
    /// normalization's root there, so the value and derivative of the
    /// normalized matrix live in the first two surviving Taylor
    /// coefficients: with `m` the root multiplicity, `raw_m = g_m R(0)` and
    /// `raw_{m+1} = g_m R'(0) + g_{m+1} R(0)`.
    fn k_apply(&self, v: &Vector) -> Result<Vector> {
        let pv = self.perm.apply(v);
        let jets = self.raw_jet(&pv, self.mult + 1);
        let gm = self.norm.coeff(self.mult);
        let gm1 = self.norm.coeff(self.mult + 1);
        for (k, jet) in jets.iter().enumerate().take(self.mult) {
            if !jet.is_zero() {
                return Err(Error::UnexpectedSpectrum(format!(
                    "raw fused product has a nonzero order-{k} term below the normalization root"
                )));
            }
        }
        // raw_m = g_m P, so applying it to P v must give back g_m v
        if jets[self.mult] != v.scale(&gm) {
            return Err(Error::UnexpectedSpectrum(
                "fused product is not regular at u = 0".into(),
            ));
        }
        Ok(jets[self.mult + 1].sub(&v.scale(&gm1)).scale(&gm.inv()))
    }

    /// Fixes the affine freedom of the log-derivative so the density
    /// vanishes on the fully symmetric component and has gap 2 to the next
    /// one, then checks the resulting constants against the closed forms
    /// `alpha = -p` and `beta = h(n-1)`.
    fn affine_constants(&self) -> Result<(Scalar, Scalar)> {
        let vs = self.hole.highest_weight_vectors();
        let k0 = proportionality(&self.k_apply(&vs[0])?, &vs[0])?;
        let k1 = proportionality(&self.k_apply(&vs[1])?, &vs[1])?;
        let two = Scalar::int(2);
        let alpha = &two / &(&k1 - &k0);
        if alpha != -&self.p {
            return Err(Error::UnexpectedSpectrum(format!(
                "log-derivative slope {alpha} does not match -p"
            )));
        }
        let beta = -&(&alpha * &k0);
        let expect = Scalar::from_rational(harmonic_number(self.hole.n() - 1));
        if beta != expect {
            return Err(Error::UnexpectedSpectrum(format!(
                "log-derivative offset {beta} does not match the harmonic number"
            )));
        }
        Ok((alpha, beta))
    }

    /// Normalized fused R-matrix as an operator polynomial on hole (x) hole.
    pub fn poly(&self) -> Result<PolyOperator> {
        let dim = self.hole.dim();
        let two = self.hole.space().tensor(self.hole.space());
        let mut coeffs: Vec<GradedOperator> = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                let col = self.raw_column_poly(a, b);
                for (row, poly) in col.iter() {
                    for (k, c) in poly.coeffs().iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        while coeffs.len() <= k {
                            coeffs.push(GradedOperator::new_zero(
                                two.clone(),
                                two.clone(),
                                crate::graded::Parity::Even,
                                Mode::Exact,
                            ));
                        }
                        coeffs[k].set(row, a * dim + b, c.clone());
                    }
                }
            }
        }
        PolyOperator::from_coeffs(coeffs).div_exact_scalar(&self.norm)
    }

    /// Normalized fused R-matrix evaluated at one point, without building
    /// the symbolic polynomial.
    pub fn eval(&self, u: &Scalar) -> Result<GradedOperator> {
        let g = self.norm.eval(u);
        if g.is_zero() {
            // the raw product degenerates at the roots of the
            // normalization (u = 0 among them for n >= 3), where only the
            // symbolic division recovers the finite value
            return Ok(self.poly()?.eval(u));
        }
        let factors = self.factor_list();
        let pinv = self.p.inv();
        let dim = self.hole.dim();
        let two = self.hole.space().tensor(self.hole.space());
        let mut out = GradedOperator::new_zero(
            two.clone(),
            two,
            crate::graded::Parity::Even,
            Mode::Exact,
        );
        let ginv = g.inv();
        for a in 0..dim {
            for b in 0..dim {
                let mut v = self.emb_cols[a].tensor(&self.emb_cols[b]);
                for (i, j, s) in &self.middle {
                    let c = &(u + s) * &pinv;
                    v = v.scale(&c).add(&swap_factor(&v, &factors, *i, *j));
                }
                let col = self.project.apply(&v);
                for (row, val) in col.iter() {
                    out.set(row, a * dim + b, val * &ginv);
                }
            }
        }
        Ok(out)
    }

    /// Integrable Hamiltonian density `alpha R'(0) P + beta` applied to a
    /// two-site vector; avoids materializing the density for large n.
    pub fn hamiltonian_apply(&self, v: &Vector) -> Result<Vector> {
        let kv = self.k_apply(v)?;
        Ok(kv.scale(&self.alpha).add(&v.scale(&self.beta)))
    }

    /// Integrable Hamiltonian density as a full matrix, assembled column by
    /// column from [`FusedR::hamiltonian_apply`].
    pub fn hamiltonian_density(&self) -> Result<GradedOperator> {
        let dim = self.hole.dim();
        let two = self.hole.space().tensor(self.hole.space());
        let mut out = GradedOperator::new_zero(
            two.clone(),
            two.clone(),
            crate::graded::Parity::Even,
            Mode::Exact,
        );
        for col in 0..two.dim() {
            let _ = dim;
            let basis = Vector::basis(&two, col, Mode::Exact);
            let image = self.hamiltonian_apply(&basis)?;
            for (row, val) in image.iter() {
                out.set(row, col, val.clone());
            }
        }
        Ok(out)
    }
}

/// Normalized fused R-matrix on hole (x) hole as an operator polynomial.
pub fn fused_r(n: usize, p: &Scalar) -> Result<PolyOperator> {
    FusedR::new(n, p)?.poly()
}

/// Integrable Hamiltonian density `2 sum_i h(i) Pi_i` of the hole chain,
/// derived from the log-derivative of the fused R-matrix at the regular
/// point. Independent of the supercharge construction.
pub fn integrable_hamiltonian_density(n: usize, p: &Scalar) -> Result<GradedOperator> {
    FusedR::new(n, p)?.hamiltonian_density()
}

/// R-matrix intertwining the fundamental space (first factor) with the hole
/// module (second factor), obtained by fusing only the second factor. Left
/// unnormalized; spectral comparisons across lengths divide out the scalar.
pub fn mixed_fused_r(n: usize, p: &Scalar) -> PolyOperator {
    assert!(n >= 2, "need n >= 2");
    assert!(!p.is_zero(), "spectral unit p must be nonzero");
    assert_eq!(p.mode(), Mode::Exact, "fusion is exact-only");
    let hole = HoleModule::new(n);
    let vf = hole.fundamental().clone();
    let e = hole.embedding();
    let ambient_form = BilinearForm::standard(&vf, Mode::Exact).tensor_power(n - 1);
    let e_adj = e.superadjoint(&hole.form(), &ambient_form);
    let fund_id = GradedOperator::identity(&vf, Mode::Exact);
    let restrict = fund_id.kron_graded(&e_adj);

    // product R_{0,n-1}(u) ... R_{0,1}(u - (n-2)p) with the leftmost factor
    // acting last; slot 0 is the unfused fundamental
    let factors: Vec<&GradedSpace> = vec![&vf; n];
    let pinv = p.inv();
    let dim = hole.dim();
    let fdim = vf.dim();
    let domain = vf.tensor(hole.space());
    let mut coeffs: Vec<GradedOperator> = Vec::new();
    for f in 0..fdim {
        for h in 0..dim {
            let start = Vector::basis(&vf, f, Mode::Exact)
                .tensor(&e.apply(&Vector::basis(hole.space(), h, Mode::Exact)));
            let mut pv = PolyVector::from_vector(&start);
            for j in 1..n {
                let shift = p * &Scalar::int(j as i64 - (n as i64 - 1));
                let lin = Poly::new(Mode::Exact, vec![&shift * &pinv, pinv.clone()]);
                pv = pv.scale_poly(&lin).add(&swap_factor_poly(&pv, &factors, 0, j));
            }
            let col = pv.apply_op(&restrict);
            for (row, poly) in col.iter() {
                for (k, c) in poly.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    while coeffs.len() <= k {
                        coeffs.push(GradedOperator::new_zero(
                            domain.clone(),
                            domain.clone(),
                            crate::graded::Parity::Even,
                            Mode::Exact,
                        ));
                    }
                    coeffs[k].set(row, f * dim + h, c.clone());
                }
            }
        }
    }
    PolyOperator::from_coeffs(coeffs)
}

/// Ordered product `R_{0L}(u) ... R_{01}(u)` on aux (x) site^L, with the
/// auxiliary space in slot 0.
pub fn monodromy_matrix(
    r: &PolyOperator,
    aux: &GradedSpace,
    site: &GradedSpace,
    l: usize,
) -> PolyOperator {
    assert!(l >= 1, "need at least one site");
    assert_eq!(
        r.domain(),
        &aux.tensor(site),
        "R-matrix does not act on aux (x) site"
    );
    let mut factors: Vec<&GradedSpace> = vec![aux];
    factors.extend(std::iter::repeat(site).take(l));
    let mut acc: Option<PolyOperator> = None;
    for i in (1..=l).rev() {
        let emb = embed_pair_poly(r, &factors, 0, i);
        acc = Some(match acc {
            None => emb,
            Some(a) => a.mul(&emb),
        });
    }
    acc.expect("l >= 1")
}

/// Transfer matrix `T(u) = str_0 R_{0L}(u) ... R_{01}(u)`: the supertrace of
/// the monodromy over the auxiliary factor, as an operator polynomial on the
/// chain. Regularity of R gives `T(0) = S_L`.
pub fn transfer_matrix(
    r: &PolyOperator,
    aux: &GradedSpace,
    site: &GradedSpace,
    l: usize,
) -> PolyOperator {
    let chain = site.tensor_power(l);
    monodromy_matrix(r, aux, site, l).partial_supertrace_first(aux, &chain, &chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{chain_hamiltonian, shift_operator};
    use crate::rep::casimir::two_site_decomposition;
    use crate::rep::{coproduct, fundamental_space};
    use crate::supercharge::{hamiltonian_density, sln1_hole_charge};
    use proptest::prelude::*;

    fn sym_projector(space: &GradedSpace) -> GradedOperator {
        let id = GradedOperator::identity(&space.tensor(space), Mode::Exact);
        let p = GradedOperator::graded_swap(space, space, Mode::Exact);
        id.add(&p).scale(&Scalar::ratio(1, 2))
    }

    fn antisym_projector(space: &GradedSpace) -> GradedOperator {
        let id = GradedOperator::identity(&space.tensor(space), Mode::Exact);
        let p = GradedOperator::graded_swap(space, space, Mode::Exact);
        id.sub(&p).scale(&Scalar::ratio(1, 2))
    }

    /// Eigenpolynomial of the fused R on the i-th Casimir component:
    /// prod_{l<=i}(u - lp) prod_{l>i}(u + lp) / ((n-1)! p^{n-1}).
    fn spectral_factor(n: usize, p: &Scalar, i: usize) -> Poly {
        let mut roots = Vec::new();
        for l in 1..=i {
            roots.push(p * &Scalar::int(l as i64));
        }
        for l in (i + 1)..n {
            roots.push(-&(p * &Scalar::int(l as i64)));
        }
        let mut scale = Scalar::one(Mode::Exact);
        for l in 1..n as i64 {
            scale = &scale * &Scalar::int(l);
        }
        scale = (&scale * &p.pow(n as u32 - 1)).inv();
        Poly::from_roots(Mode::Exact, &roots, &scale)
    }

    #[test]
    fn fundamental_r_hits_permutation_and_projectors() {
        let space = fundamental_space(2, 1);
        for p in [Scalar::int(1), Scalar::ratio(5, 3)] {
            let r = fundamental_r(&space, &p);
            assert_eq!(r.degree_u(), Some(1));
            let perm = GradedOperator::graded_swap(&space, &space, Mode::Exact);
            assert_eq!(r.eval(&Scalar::zero(Mode::Exact)), perm);
            assert_eq!(r.eval(&p), sym_projector(&space).scale(&Scalar::int(2)));
            assert_eq!(
                r.eval(&-&p),
                antisym_projector(&space).scale(&Scalar::int(-2))
            );
        }
    }

    #[test]
    fn fundamental_ybe_certified_on_a_grid() {
        // degree 1 per factor means bidegree at most (2, 2) per side; a
        // 3 x 3 grid of distinct values certifies the polynomial identity
        let space = fundamental_space(2, 1);
        let r = fundamental_r(&space, &Scalar::int(1));
        let us = [Scalar::ratio(2, 3), Scalar::int(1), Scalar::int(-2)];
        let vs = [Scalar::ratio(-5, 7), Scalar::ratio(1, 2), Scalar::int(3)];
        let mut samples = Vec::new();
        for u in &us {
            for v in &vs {
                samples.push((u.clone(), v.clone()));
            }
        }
        ybe_check(&r, &space, &samples).unwrap();
    }

    #[test]
    fn perturbed_r_fails_the_ybe() {
        let space = fundamental_space(2, 1);
        let mut r = fundamental_r(&space, &Scalar::int(1));
        let mut entry = r.entry_poly(0, 1);
        entry = entry.add(&Poly::constant(Scalar::ratio(1, 5)));
        r.set_entry_poly(0, 1, &entry);
        let err = ybe_check(
            &r,
            &space,
            &[(Scalar::ratio(2, 3), Scalar::ratio(-5, 7))],
        )
        .unwrap_err();
        assert!(err.to_string().contains("Yang-Baxter residual"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn fundamental_ybe_holds_at_random_rationals(
            un in -6i64..6, ud in 1i64..5, vn in -6i64..6, vd in 1i64..5,
        ) {
            let space = fundamental_space(2, 1);
            let r = fundamental_r(&space, &Scalar::int(1));
            let sample = (Scalar::ratio(un, ud), Scalar::ratio(vn, vd));
            prop_assert!(ybe_check(&r, &space, &[sample]).is_ok());
        }
    }

    #[test]
    fn fusion_antisymmetrizer_is_the_embedding_projector() {
        for n in 2..=4 {
            let p = Scalar::int(1);
            let a = antisym_projector_by_fusion(n, &p);
            assert_eq!(a.mul(&a), a, "n={n} idempotency");
            assert_eq!(a.trace(), Scalar::int((1 << n) - 1), "n={n} rank");
            let hole = HoleModule::new(n);
            let e = hole.embedding();
            let ambient =
                BilinearForm::standard(hole.fundamental(), Mode::Exact).tensor_power(n - 1);
            let e_adj = e.superadjoint(&hole.form(), &ambient);
            assert_eq!(
                GradedOperator::identity(hole.space(), Mode::Exact),
                e_adj.mul(&e),
                "n={n} isometry"
            );
            assert_eq!(a, e.mul(&e_adj), "n={n} image projector");
        }
        // the prefactor stays correct away from p = 1
        let a = antisym_projector_by_fusion(3, &Scalar::ratio(5, 3));
        assert_eq!(a, antisym_projector_by_fusion(3, &Scalar::int(1)));
    }

    #[test]
    fn fused_r_for_two_holes_is_the_relabelled_fundamental() {
        let p = Scalar::ratio(5, 3);
        let fused = fused_r(2, &p).unwrap();
        let hole = HoleModule::new(2);
        let e = hole.embedding();
        let e_pair = e.kron_graded(&e);
        let fund = fundamental_r(hole.fundamental(), &p);
        // intertwining (E (x) E) R_hole(u) = R_F(u) (E (x) E), coefficient
        // by coefficient
        for k in 0..=1 {
            assert_eq!(e_pair.mul(&fused.coeff(k)), fund.coeff(k).mul(&e_pair));
        }
        assert_eq!(fused.degree_u(), Some(1));
    }

    #[test]
    fn fused_r_is_regular_and_matches_the_spectral_form() {
        for n in 2..=3 {
            for p in [Scalar::int(1), Scalar::ratio(5, 3)] {
                let hole = HoleModule::new(n);
                let fused = fused_r(n, &p).unwrap();
                let perm =
                    GradedOperator::graded_swap(hole.space(), hole.space(), Mode::Exact);
                assert_eq!(fused.eval(&Scalar::zero(Mode::Exact)), perm, "n={n} regularity");
                let decomp = two_site_decomposition(&hole).unwrap();
                let mut expect = PolyOperator::constant(
                    decomp.projectors[0].clone(),
                )
                .scale_poly(&spectral_factor(n, &p, 0));
                for i in 1..n {
                    expect = expect.add(
                        &PolyOperator::constant(decomp.projectors[i].clone())
                            .scale_poly(&spectral_factor(n, &p, i)),
                    );
                }
                assert_eq!(fused, expect, "n={n} spectral form");
            }
        }
        // the component-1 eigenpolynomial at n=3 is (u-p)(u+2p)/(2p^2)
        let p = Scalar::ratio(5, 3);
        let s1 = spectral_factor(3, &p, 1);
        let explicit = Poly::from_roots(
            Mode::Exact,
            &[p.clone(), -&(&p * &Scalar::int(2))],
            &(&Scalar::int(2) * &p.pow(2)).inv(),
        );
        assert_eq!(s1, explicit);
    }

    #[test]
    fn fused_r_n4_matches_the_spectral_form() {
        let p = Scalar::int(1);
        let hole = HoleModule::new(4);
        let fused = fused_r(4, &p).unwrap();
        let decomp = two_site_decomposition(&hole).unwrap();
        let mut expect =
            PolyOperator::constant(decomp.projectors[0].clone()).scale_poly(&spectral_factor(4, &p, 0));
        for i in 1..4 {
            expect = expect.add(
                &PolyOperator::constant(decomp.projectors[i].clone())
                    .scale_poly(&spectral_factor(4, &p, i)),
            );
        }
        assert_eq!(fused, expect);
    }

    #[test]
    fn fused_ybe_certified_n3() {
        // fused entries have degree 2, so each side has bidegree at most
        // (4, 4); a 5 x 5 grid of distinct values certifies the identity
        let p = Scalar::int(1);
        let fused = fused_r(3, &p).unwrap();
        let hole = HoleModule::new(3);
        let us: Vec<Scalar> = [-3, -1, 2, 5, 7]
            .iter()
            .map(|&k| Scalar::ratio(k, 2))
            .collect();
        let vs: Vec<Scalar> = [-5, -2, 1, 4, 9]
            .iter()
            .map(|&k| Scalar::ratio(k, 3))
            .collect();
        let mut samples = Vec::new();
        for u in &us {
            for v in &vs {
                samples.push((u.clone(), v.clone()));
            }
        }
        ybe_check(&fused, hole.space(), &samples).unwrap();
    }

    #[test]
    fn fused_yang_baxter_spot_checks_pass_for_n4() {
        let fused = fused_r(4, &Scalar::int(1)).unwrap();
        let hole = HoleModule::new(4);
        let samples: Vec<(Scalar, Scalar)> = [(1, 2, 1, 4), (-1, 3, 1, 1), (2, 3, -5, 7), (1, 5, 1, 5), (3, 2, -1, 2)]
            .iter()
            .map(|&(a, b, c, d)| (Scalar::ratio(a, b), Scalar::ratio(c, d)))
            .collect();
        ybe_check(&fused, hole.space(), &samples).unwrap();
    }

    #[test]
    fn fused_r_commutes_with_the_coproduct_action() {
        let p = Scalar::int(1);
        for n in 2..=3 {
            let hole = HoleModule::new(n);
            let at = FusedR::new(n, &p).unwrap().eval(&Scalar::ratio(3, 2)).unwrap();
            for i in 1..=n + 1 {
                for j in 1..=n + 1 {
                    let gen = hole.generator(i, j);
                    let action = coproduct(&gen, &gen);
                    assert_eq!(
                        at.mul(&action),
                        action.mul(&at),
                        "n={n} generator E_{i}{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn integrable_density_matches_the_projector_expansion() {
        for n in 2..=4 {
            let p = Scalar::int(1);
            let hole = HoleModule::new(n);
            let ham = integrable_hamiltonian_density(n, &p).unwrap();
            let decomp = two_site_decomposition(&hole).unwrap();
            let mut expect = GradedOperator::new_zero(
                ham.domain().clone(),
                ham.codomain().clone(),
                crate::graded::Parity::Even,
                Mode::Exact,
            );
            for i in 1..n {
                let weight = Scalar::from_rational(harmonic_number(i)) * Scalar::int(2);
                expect = expect.add(&decomp.projectors[i].scale(&weight));
            }
            assert_eq!(ham, expect, "n={n}");
            // spot values: gap 2 to the first excited component, 2 h(3) = 11/3
            // on the third one
            let vs = hole.highest_weight_vectors();
            assert_eq!(ham.apply(&vs[1]), vs[1].scale(&Scalar::int(2)), "n={n}");
            if n == 4 {
                assert_eq!(ham.apply(&vs[3]), vs[3].scale(&Scalar::ratio(11, 3)));
            }
        }
        // the density does not depend on the spectral unit
        assert_eq!(
            integrable_hamiltonian_density(3, &Scalar::int(1)).unwrap(),
            integrable_hamiltonian_density(3, &Scalar::ratio(5, 3)).unwrap()
        );
    }

    #[test]
    fn hamiltonian_routes_agree_on_full_matrices() {
        for n in 2..=4 {
            let hole = HoleModule::new(n);
            let mut norm = Scalar::one(Mode::Exact);
            for k in 1..n as i64 {
                norm = &norm * &Scalar::int(k);
            }
            let charge = sln1_hole_charge(&hole);
            let from_charge = hamiltonian_density(&charge, &hole.form(), &norm);
            let from_rmatrix = integrable_hamiltonian_density(n, &Scalar::int(1)).unwrap();
            assert_eq!(from_charge, from_rmatrix, "n={n}");
        }
    }

    #[test]
    fn hamiltonian_routes_agree_on_highest_weight_vectors_n5() {
        let n = 5;
        let hole = HoleModule::new(n);
        let fused = FusedR::new(n, &Scalar::int(1)).unwrap();
        let charge = sln1_hole_charge(&hole);
        let mut norm = Scalar::one(Mode::Exact);
        for k in 1..n as i64 {
            norm = &norm * &Scalar::int(k);
        }
        let from_charge = hamiltonian_density(&charge, &hole.form(), &norm);
        for (i, v) in hole.highest_weight_vectors().iter().enumerate() {
            let expect = v.scale(&Scalar::from_rational(
                harmonic_number(i) * num_rational::BigRational::from_integer(2.into()),
            ));
            assert_eq!(fused.hamiltonian_apply(v).unwrap(), expect, "component {i}");
            assert_eq!(from_charge.apply(v), expect, "charge route, component {i}");
        }
    }

    #[test]
    fn transfer_reduces_to_the_shift_at_zero() {
        let space = fundamental_space(2, 1);
        let r = fundamental_r(&space, &Scalar::int(1));
        for l in 2..=4 {
            let t = transfer_matrix(&r, &space, &space, l);
            let at0 = t.eval(&Scalar::zero(Mode::Exact));
            assert_eq!(at0, shift_operator(&space, l, Mode::Exact), "L={l}");
        }
        let hole = HoleModule::new(3);
        let fused = fused_r(3, &Scalar::int(1)).unwrap();
        let t = transfer_matrix(&fused, hole.space(), hole.space(), 2);
        assert_eq!(
            t.eval(&Scalar::zero(Mode::Exact)),
            shift_operator(hole.space(), 2, Mode::Exact)
        );
    }

    #[test]
    fn transfer_matrices_commute_at_sample_points() {
        let space = fundamental_space(2, 1);
        let r = fundamental_r(&space, &Scalar::int(1));
        let t = transfer_matrix(&r, &space, &space, 3);
        let a = t.eval(&Scalar::ratio(1, 2));
        let b = t.eval(&Scalar::ratio(-1, 3));
        assert_eq!(a.mul(&b), b.mul(&a));

        let hole = HoleModule::new(3);
        let fused = fused_r(3, &Scalar::int(1)).unwrap();
        let t = transfer_matrix(&fused, hole.space(), hole.space(), 2);
        let a = t.eval(&Scalar::ratio(1, 2));
        let b = t.eval(&Scalar::ratio(-1, 3));
        assert_eq!(a.mul(&b), b.mul(&a));
    }

    /// Solves `lhs = a base + b` from two probe entries and asserts the fit
    /// holds exactly everywhere, returning (a, b).
    fn affine_fit(lhs: &GradedOperator, base: &GradedOperator) -> (Scalar, Scalar) {
        let (row, col, pivot) = base
            .iter()
            .find(|(r, c, _)| r != c)
            .map(|(r, c, v)| (r, c, v.clone()))
            .expect("base operator needs an off-diagonal entry");
        let a = &lhs.get(row, col) / &pivot;
        let b = &lhs.get(0, 0) - &(&a * &base.get(0, 0));
        let id = GradedOperator::identity(lhs.domain(), lhs.mode());
        assert_eq!(lhs, &base.scale(&a).add(&id.scale(&b)), "affine fit fails");
        (a, b)
    }

    #[test]
    fn transfer_log_derivative_is_the_summed_density() {
        // fundamental chain: T'(0) T(0)^{-1} is affine in the summed
        // two-site density with periodic wrap
        let space = fundamental_space(2, 1);
        let p = Scalar::ratio(5, 3);
        let r = fundamental_r(&space, &p);
        let l = 3;
        let t = transfer_matrix(&r, &space, &space, l);
        let shift = shift_operator(&space, l, Mode::Exact);
        let shift_inv = shift.mul(&shift); // S^3 = 1
        let logderiv = t.derivative().eval(&Scalar::zero(Mode::Exact)).mul(&shift_inv);
        let id2 = GradedOperator::identity(&space.tensor(&space), Mode::Exact);
        let density = id2.sub(&GradedOperator::graded_swap(&space, &space, Mode::Exact));
        let summed = chain_hamiltonian(&density, &space, l);
        let (a, _b) = affine_fit(&logderiv, &summed);
        assert_eq!(a, -&p.inv());

        // fused hole chain at n=3, L=2: same statement against the
        // integrable density
        let hole = HoleModule::new(3);
        let fused = fused_r(3, &Scalar::int(1)).unwrap();
        let t = transfer_matrix(&fused, hole.space(), hole.space(), 2);
        let shift = shift_operator(hole.space(), 2, Mode::Exact);
        let logderiv = t.derivative().eval(&Scalar::zero(Mode::Exact)).mul(&shift);
        let density = integrable_hamiltonian_density(3, &Scalar::int(1)).unwrap();
        let summed = chain_hamiltonian(&density, hole.space(), 2);
        affine_fit(&logderiv, &summed);
    }

    #[test]
    fn single_site_transfer_is_affine_in_u() {
        // str_0 R_{01}(u) = ((n-1) u/p + 1) Id for gl(n|1)
        for n in 2..=3 {
            let space = fundamental_space(n, 1);
            let p = Scalar::ratio(5, 3);
            let r = fundamental_r(&space, &p);
            let t = transfer_matrix(&r, &space, &space, 1);
            let id = PolyOperator::constant(GradedOperator::identity(&space, Mode::Exact));
            let slope = Poly::new(
                Mode::Exact,
                vec![Scalar::int(1), &Scalar::int(n as i64 - 1) * &p.inv()],
            );
            assert_eq!(t, id.scale_poly(&slope), "n={n}");
        }
    }

    #[test]
    fn mixed_fused_r_reduces_to_the_fundamental() {
        let p = Scalar::ratio(5, 3);
        let mixed = mixed_fused_r(2, &p);
        let hole = HoleModule::new(2);
        let e = hole.embedding();
        let relabel = GradedOperator::identity(hole.fundamental(), Mode::Exact).kron_graded(&e);
        let fund = fundamental_r(hole.fundamental(), &p);
        for k in 0..=1 {
            assert_eq!(relabel.mul(&mixed.coeff(k)), fund.coeff(k).mul(&relabel));
        }
    }

    #[test]
    fn mixed_ybe_holds_at_samples() {
        // spaces (fund, fund, hole): the fundamental R intertwines slots
        // (1,2), the mixed R slots (1,3) and (2,3)
        let p = Scalar::int(1);
        let n = 3;
        let hole = HoleModule::new(n);
        let vf = hole.fundamental().clone();
        let fund = fundamental_r(&vf, &p);
        let mixed = mixed_fused_r(n, &p);
        let factors = [&vf, &vf, hole.space()];
        let r12 = embed_pair_poly(&fund, &factors, 0, 1);
        let r13 = embed_pair_poly(&mixed, &factors, 0, 2);
        let r23 = embed_pair_poly(&mixed, &factors, 1, 2);
        let samples = [
            (Scalar::ratio(2, 3), Scalar::ratio(-5, 7)),
            (Scalar::int(1), Scalar::ratio(1, 2)),
            (Scalar::ratio(-3, 2), Scalar::int(2)),
            (Scalar::ratio(7, 5), Scalar::ratio(4, 3)),
            (Scalar::int(-2), Scalar::ratio(-1, 4)),
            (Scalar::ratio(1, 6), Scalar::int(3)),
        ];
        for (u, v) in &samples {
            let uv = u + v;
            let a12 = r12.eval(u);
            let a13 = r13.eval(&uv);
            let a23 = r23.eval(v);
            let lhs = a12.mul(&a13).mul(&a23);
            let rhs = a23.mul(&a13).mul(&a12);
            assert_eq!(lhs, rhs, "mixed YBE at (u, v) = ({u}, {v})");
        }
    }
}
