//! Local length-changing supercharges q: V -> V(x)V, their superadjoints,
//! the gauge-term identity checks, and the Hamiltonian density they induce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{BilinearForm, GradedOperator, GradedSpace, Parity, Vector};
use crate::rep::hole::HoleModule;
use crate::rep::{coproduct, fundamental_space};
use crate::scalar::{Mode, Scalar, FLOAT_ZERO_TOL};

/// A local charge mapping one site into two, together with the sign
/// `omega = (-1)^{|q|+1}` and the gauge vector of its nilpotency identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChargeRepr", into = "ChargeRepr")]
pub struct LocalCharge {
    op: GradedOperator,
    omega: i64,
    chi: Vector,
}

impl LocalCharge {
    pub fn new(op: GradedOperator, chi: Vector) -> Self {
        let v = op.domain().clone();
        assert!(v.dim() >= 2, "charge needs at least two states per site");
        assert_eq!(op.codomain(), &v.tensor(&v), "charge must map V to V(x)V");
        assert_eq!(chi.space(), op.codomain());
        assert_eq!(chi.mode(), op.mode());
        let omega = if op.degree().is_odd() { 1 } else { -1 };
        LocalCharge { op, omega, chi }
    }

    pub fn op(&self) -> &GradedOperator {
        &self.op
    }

    pub fn degree(&self) -> Parity {
        self.op.degree()
    }

    pub fn omega(&self) -> i64 {
        self.omega
    }

    pub fn omega_scalar(&self) -> Scalar {
        match self.op.mode() {
            Mode::Exact => Scalar::int(self.omega),
            Mode::Float => Scalar::from_f64(self.omega as f64),
        }
    }

    pub fn chi(&self) -> &Vector {
        &self.chi
    }

    pub fn site_space(&self) -> &GradedSpace {
        self.op.domain()
    }

    pub fn mode(&self) -> Mode {
        self.op.mode()
    }

    /// `G^{|q|}` on one site: the grading for odd charges, identity otherwise.
    pub fn degree_sign_op(&self) -> GradedOperator {
        if self.op.degree().is_odd() {
            GradedOperator::grading(self.op.domain(), self.op.mode())
        } else {
            GradedOperator::identity(self.op.domain(), self.op.mode())
        }
    }

    /// Superadjoint q*: V(x)V -> V with respect to the given one-site form.
    pub fn superadjoint(&self, form: &BilinearForm) -> GradedOperator {
        assert_eq!(form.space(), self.op.domain());
        let pair_form = form.tensor(form);
        self.op.superadjoint(form, &pair_form)
    }

    pub fn to_float(&self) -> LocalCharge {
        LocalCharge {
            op: self.op.to_float(),
            omega: self.omega,
            chi: self.chi.to_float(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ChargeRepr {
    #[serde(flatten)]
    map: GradedOperator,
    omega: i64,
    chi: Vec<(usize, Scalar)>,
}

impl From<LocalCharge> for ChargeRepr {
    fn from(c: LocalCharge) -> ChargeRepr {
        ChargeRepr {
            omega: c.omega,
            chi: c.chi.iter().map(|(i, v)| (i, v.clone())).collect(),
            map: c.op,
        }
    }
}

impl TryFrom<ChargeRepr> for LocalCharge {
    type Error = String;

    fn try_from(r: ChargeRepr) -> std::result::Result<LocalCharge, String> {
        let v = r.map.domain().clone();
        if r.map.codomain() != &v.tensor(&v) {
            return Err("charge codomain is not the square of its domain".into());
        }
        let expected = if r.map.degree().is_odd() { 1 } else { -1 };
        if r.omega != expected {
            return Err(format!("omega {} does not match the charge degree", r.omega));
        }
        let mut chi = Vector::zero(r.map.codomain().clone(), r.map.mode());
        for (i, val) in r.chi {
            if i >= chi.space().dim() {
                return Err(format!("chi index {i} out of range"));
            }
            chi.set(i, val);
        }
        Ok(LocalCharge {
            op: r.map,
            omega: expected,
            chi,
        })
    }
}

/// The sl(2|1) charge `q e_3 = e_2(x)e_1 - q_param e_1(x)e_2` (zero on e_1,
/// e_2), in exact or float mode following the parameter.
pub fn sl21_fundamental_charge(q_param: &Scalar) -> LocalCharge {
    assert!(!q_param.is_zero(), "deformation parameter must be nonzero");
    let mode = q_param.mode();
    let v = fundamental_space(2, 1);
    let two = v.tensor(&v);
    let mut op = GradedOperator::new_zero(v, two.clone(), Parity::Odd, mode);
    op.set(3, 2, Scalar::one(mode)); // e_2 (x) e_1
    op.set(1, 2, -q_param); // e_1 (x) e_2
    LocalCharge::new(op, Vector::zero(two, mode))
}

/// The hole-basis charge of gl(n|1): a state splits into all ordered
/// two-block shuffles of its holes, with alternating block-size prefactors.
pub fn sln1_hole_charge(hole: &HoleModule) -> LocalCharge {
    let space = hole.space().clone();
    let dim = space.dim();
    let two = space.tensor(&space);
    let mut op = GradedOperator::new_zero(space, two.clone(), Parity::Odd, Mode::Exact);
    for col in 0..dim {
        let holes = hole.holes(col);
        let r = holes.len();
        for m in 1..r {
            let outer = if (r * m) % 2 == 0 { 1 } else { -1 };
            for (b1, b2, sign) in crate::rep::shuffles(m, r - m) {
                let left: Vec<usize> = b1.iter().map(|&p| holes[p - 1]).collect();
                let right: Vec<usize> = b2.iter().map(|&p| holes[p - 1]).collect();
                let row = hole.state_index(&left) * dim + hole.state_index(&right);
                op.add_to(row, col, &Scalar::int(outer * sign));
            }
        }
    }
    LocalCharge::new(op, Vector::zero(two, Mode::Exact))
}

/// Left side of the local nilpotency identity, `((q(x)1) + w(G^{|q|}(x)q))q`.
fn nilpotency_defect(charge: &LocalCharge) -> GradedOperator {
    let q = charge.op();
    let id = GradedOperator::identity(q.domain(), q.mode());
    let g = charge.degree_sign_op();
    q.kron_plain(&id)
        .add(&g.kron_plain(q).scale(&charge.omega_scalar()))
        .mul(q)
}

/// Checks `((q(x)1) + w(G^{|q|}(x)q)) q v = chi(x)v - v(x)chi` for every
/// basis vector `v` and returns the unique gauge vector `chi`, or an error
/// naming a basis vector where no gauge vector closes the identity.
pub fn check_local_nilpotency(charge: &LocalCharge) -> Result<Vector> {
    let lhs = nilpotency_defect(charge);
    let v = charge.site_space();
    let dim = v.dim();
    let mode = charge.mode();
    let two = v.tensor(v);
    if lhs.is_zero() {
        return Ok(Vector::zero(two, mode));
    }
    // the equation pins chi entrywise: chi_(a,b) = lhs_k[(a,b,k)] for k != a
    let mut chi = Vector::zero(two.clone(), mode);
    for a in 0..dim {
        let k = usize::from(a == 0);
        for b in 0..dim {
            let val = lhs.get((a * dim + b) * dim + k, k);
            if !val.is_zero() {
                chi.set(a * dim + b, val);
            }
        }
    }
    // verify the candidate against every column
    let mut rhs = GradedOperator::new_zero(
        v.clone(),
        v.tensor(v).tensor(v),
        lhs.degree(),
        mode,
    );
    for k in 0..dim {
        for (pair, val) in chi.iter() {
            rhs.add_to(pair * dim + k, k, val);
            let (i, j) = (k, pair);
            rhs.add_to(i * dim * dim + j, k, &-val);
        }
    }
    let ok = match mode {
        Mode::Exact => lhs == rhs,
        Mode::Float => lhs.approx_eq(&rhs, FLOAT_ZERO_TOL),
    };
    if ok {
        Ok(chi)
    } else {
        let defect = lhs.sub(&rhs);
        let col = defect
            .iter()
            .next()
            .map(|(_, c, _)| c)
            .expect("nonzero defect");
        Err(Error::IdentityFailed(format!(
            "local nilpotency fails on basis vector {col}"
        )))
    }
}

/// Gauge vectors of the local invariance identity, one per named generator.
#[derive(Clone, Debug)]
pub struct GaugeTerms {
    pub terms: Vec<(String, Vector)>,
}

/// For each generator X solves
/// `(qX - (-1)^{|X||q|} D(X) q) v = m(x)v - w(-1)^{|v||m|} v(x)m`
/// for the gauge vector `m` of parity `|X|+|q|`, or reports the generator
/// whose identity cannot be closed.
pub fn check_local_invariance(
    charge: &LocalCharge,
    generators: &[(String, GradedOperator)],
) -> Result<GaugeTerms> {
    let q = charge.op();
    let v = charge.site_space().clone();
    let dim = v.dim();
    let mode = charge.mode();
    let mut terms = Vec::with_capacity(generators.len());
    for (name, x) in generators {
        assert_eq!(x.domain(), &v, "generator acts on the charge's site space");
        assert_eq!(x.mode(), mode);
        let cross = x.degree().is_odd() && q.degree().is_odd();
        let dx = coproduct(x, x);
        let mut lhs = q.mul(x);
        lhs = if cross {
            lhs.add(&dx.mul(q))
        } else {
            lhs.sub(&dx.mul(q))
        };
        let m_parity = x.degree() ^ q.degree();
        let mut m = Vector::zero(v.clone(), mode);
        if !lhs.is_zero() {
            for a in 0..dim {
                let k = usize::from(a == 0);
                let val = lhs.get(a * dim + k, k);
                if !val.is_zero() {
                    m.set(a, val);
                }
            }
        }
        // verify m against all columns, including the all-zero candidate
        let mut rhs = GradedOperator::new_zero(v.clone(), v.tensor(&v), lhs.degree(), mode);
        for k in 0..dim {
            let sign_bit = v.parity(k).bit() * m_parity.bit();
            let s = charge.omega * if sign_bit % 2 == 0 { 1 } else { -1 };
            for (a, val) in m.iter() {
                rhs.add_to(a * dim + k, k, val);
                let sv = match mode {
                    Mode::Exact => Scalar::int(-s),
                    Mode::Float => Scalar::from_f64(-s as f64),
                };
                rhs.add_to(k * dim + a, k, &(&sv * val));
            }
        }
        let ok = match mode {
            Mode::Exact => lhs == rhs,
            Mode::Float => lhs.approx_eq(&rhs, FLOAT_ZERO_TOL),
        };
        if !ok {
            return Err(Error::IdentityFailed(format!(
                "local invariance fails for generator {name}"
            )));
        }
        terms.push((name.clone(), m));
    }
    Ok(GaugeTerms { terms })
}

/// Hamiltonian density on two sites:
/// `norm * [w(q*(x)1)(G^{|q|}(x)q) + w(G^{|q|}(x)q*)(q(x)1) + qq*
///          + (q*q(x)1 + 1(x)q*q)/2]`.
pub fn hamiltonian_density(
    charge: &LocalCharge,
    form: &BilinearForm,
    normalization: &Scalar,
) -> GradedOperator {
    let q = charge.op();
    let mode = q.mode();
    assert_eq!(normalization.mode(), mode);
    let qd = charge.superadjoint(form);
    let id = GradedOperator::identity(q.domain(), mode);
    let g = charge.degree_sign_op();
    let omega = charge.omega_scalar();
    let t1 = qd.kron_plain(&id).mul(&g.kron_plain(q)).scale(&omega);
    let t2 = g.kron_plain(&qd).mul(&q.kron_plain(&id)).scale(&omega);
    let t3 = q.mul(&qd);
    let qdq = qd.mul(q);
    let half = match mode {
        Mode::Exact => Scalar::ratio(1, 2),
        Mode::Float => Scalar::from_f64(0.5),
    };
    let t4 = qdq.kron_plain(&id).add(&id.kron_plain(&qdq)).scale(&half);
    t1.add(&t2).add(&t3).add(&t4).scale(normalization)
}

/// Simple generator set `E_{k,k+1}, E_{k+1,k}` of gl(n|1), labelled, for the
/// invariance check on the hole module.
pub fn hole_simple_generators(hole: &HoleModule) -> Vec<(String, GradedOperator)> {
    let n = hole.n();
    let mut out = Vec::with_capacity(2 * n);
    for k in 1..=n {
        out.push((format!("E_{}_{}", k, k + 1), hole.generator(k, k + 1)));
        out.push((format!("E_{}_{}", k + 1, k), hole.generator(k + 1, k)));
    }
    out
}

/// Harmonic number `h(i) = 1 + 1/2 + ... + 1/i`, the half-eigenvalues of the
/// normalized hole-chain density.
pub fn harmonic_number(i: usize) -> num_rational::BigRational {
    use num_traits::Zero;
    let mut h = num_rational::BigRational::zero();
    for m in 1..=i as i64 {
        h += num_rational::BigRational::new(1.into(), m.into());
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::casimir::two_site_decomposition;
    use crate::rep::fundamental_generator;
    use num_complex::Complex64;
    use num_rational::BigRational;
    use num_traits::{FromPrimitive, Zero};

    fn one_minus_swap(space: &GradedSpace, mode: Mode) -> GradedOperator {
        let two = space.tensor(space);
        GradedOperator::identity(&two, mode)
            .sub(&GradedOperator::graded_swap(space, space, mode))
    }

    #[test]
    fn sl21_charge_displayed_entries() {
        let c = sl21_fundamental_charge(&Scalar::int(1));
        let v = c.site_space().clone();
        assert!(c.op().apply(&Vector::basis(&v, 0, Mode::Exact)).is_zero());
        assert!(c.op().apply(&Vector::basis(&v, 1, Mode::Exact)).is_zero());
        let image = c.op().apply(&Vector::basis(&v, 2, Mode::Exact));
        assert_eq!(image.get(3), Scalar::int(1));
        assert_eq!(image.get(1), Scalar::int(-1));
        assert_eq!(image.nnz(), 2);
        assert_eq!(c.degree(), Parity::Odd);
        assert_eq!(c.omega(), 1);
    }

    #[test]
    #[should_panic(expected = "nonzero")]
    fn sl21_charge_rejects_zero_parameter() {
        sl21_fundamental_charge(&Scalar::int(0));
    }

    #[test]
    fn sl21_adjoint_entries() {
        let qp = Scalar::ratio(5, 7);
        let c = sl21_fundamental_charge(&qp);
        let form = BilinearForm::standard(c.site_space(), Mode::Exact);
        let qd = c.superadjoint(&form);
        // q*(e_2 (x) e_1) = e_3, q*(e_1 (x) e_2) = -q_param e_3
        assert_eq!(qd.get(2, 3), Scalar::int(1));
        assert_eq!(qd.get(2, 1), -&qp);
        assert_eq!(qd.nnz(), 2);
    }

    #[test]
    fn sl21_ham_is_one_minus_swap() {
        let c = sl21_fundamental_charge(&Scalar::int(1));
        let form = BilinearForm::standard(c.site_space(), Mode::Exact);
        let ham = hamiltonian_density(&c, &form, &Scalar::int(1));
        assert_eq!(ham, one_minus_swap(c.site_space(), Mode::Exact));
    }

    #[test]
    fn deformed_float_ham_matches_at_unit_parameter() {
        let c = sl21_fundamental_charge(&Scalar::from_f64(1.0));
        let form = BilinearForm::standard(c.site_space(), Mode::Float);
        let ham = hamiltonian_density(&c, &form, &Scalar::from_f64(1.0));
        assert!(ham.approx_eq(&one_minus_swap(c.site_space(), Mode::Float), 1e-12));
    }

    #[test]
    fn nilpotency_gauge_vanishes_for_builtin_charges() {
        let chi = check_local_nilpotency(&sl21_fundamental_charge(&Scalar::int(1))).unwrap();
        assert!(chi.is_zero());
        let chi = check_local_nilpotency(&sl21_fundamental_charge(&Scalar::ratio(-1, 3))).unwrap();
        assert!(chi.is_zero());
        let z = Scalar::from_complex(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0));
        let chi = check_local_nilpotency(&sl21_fundamental_charge(&z)).unwrap();
        assert!(chi.is_zero());
        for n in 2..=4 {
            let hole = HoleModule::new(n);
            let chi = check_local_nilpotency(&sln1_hole_charge(&hole)).unwrap();
            assert!(chi.is_zero(), "n={n}");
        }
    }

    #[test]
    fn corrupted_charge_fails_nilpotency() {
        let base = sl21_fundamental_charge(&Scalar::int(1));
        let mut op = base.op().clone();
        op.set(2, 1, Scalar::int(1)); // spurious e_2 -> e_1 (x) e_3 entry
        let chi_space = op.codomain().clone();
        let bad = LocalCharge::new(op, Vector::zero(chi_space, Mode::Exact));
        assert!(matches!(
            check_local_nilpotency(&bad),
            Err(Error::IdentityFailed(_))
        ));
    }

    #[test]
    fn sl21_invariance_gauge_terms() {
        let c = sl21_fundamental_charge(&Scalar::int(1));
        let v = c.site_space().clone();
        let gens = vec![
            ("E_1_2".to_string(), fundamental_generator(&v, 1, 2, Mode::Exact)),
            ("E_2_1".to_string(), fundamental_generator(&v, 2, 1, Mode::Exact)),
            ("E_2_3".to_string(), fundamental_generator(&v, 2, 3, Mode::Exact)),
            ("E_3_2".to_string(), fundamental_generator(&v, 3, 2, Mode::Exact)),
        ];
        let gauge = check_local_invariance(&c, &gens).unwrap();
        for (name, m) in &gauge.terms {
            if name == "E_3_2" {
                // the lowering fermionic generator closes on m = -e_1
                let mut expect = Vector::zero(v.clone(), Mode::Exact);
                expect.set(0, Scalar::int(-1));
                assert_eq!(m, &expect);
            } else {
                assert!(m.is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn hole_invariance_gauge_terms() {
        for n in 2..=4 {
            let hole = HoleModule::new(n);
            let c = sln1_hole_charge(&hole);
            let gauge = check_local_invariance(&c, &hole_simple_generators(&hole)).unwrap();
            let lowering = format!("E_{}_{}", n + 1, n);
            for (name, m) in &gauge.terms {
                if name == &lowering {
                    let mut expect = Vector::zero(hole.space().clone(), Mode::Exact);
                    expect.set(hole.state_index(&[n]), Scalar::int(-1));
                    assert_eq!(m, &expect, "n={n} {name}");
                } else {
                    assert!(m.is_zero(), "n={n} {name}");
                }
            }
        }
    }

    #[test]
    fn invariance_fails_for_the_odd_cartan() {
        let hole = HoleModule::new(2);
        let c = sln1_hole_charge(&hole);
        let gens = vec![("E_3_3".to_string(), hole.generator(3, 3))];
        assert!(matches!(
            check_local_invariance(&c, &gens),
            Err(Error::IdentityFailed(_))
        ));
    }

    #[test]
    fn hole_charge_small_entries() {
        let hole = HoleModule::new(3);
        let c = sln1_hole_charge(&hole);
        let dim = hole.dim();
        for k in 1..=3 {
            let idx = hole.state_index(&[k]);
            assert!(c.op().apply(&Vector::basis(hole.space(), idx, Mode::Exact)).is_zero());
        }
        // q|2,3> = |2>(x)|3> - |3>(x)|2>
        let src = hole.state_index(&[2, 3]);
        let image = c.op().apply(&Vector::basis(hole.space(), src, Mode::Exact));
        let i2 = hole.state_index(&[2]);
        let i3 = hole.state_index(&[3]);
        assert_eq!(image.get(i2 * dim + i3), Scalar::int(1));
        assert_eq!(image.get(i3 * dim + i2), Scalar::int(-1));
        assert_eq!(image.nnz(), 2);
    }

    #[test]
    fn hole_charge_at_two_matches_sl21() {
        let hole = HoleModule::new(2);
        let hc = sln1_hole_charge(&hole);
        let sc = sl21_fundamental_charge(&Scalar::int(1));
        // |1> -> e_2, |2> -> e_1, |1,2> -> e_3
        let mut u = GradedOperator::new_zero(
            hole.space().clone(),
            sc.site_space().clone(),
            Parity::Even,
            Mode::Exact,
        );
        u.set(1, 0, Scalar::int(1));
        u.set(0, 1, Scalar::int(1));
        u.set(2, 2, Scalar::int(1));
        let uu = u.kron_plain(&u);
        assert_eq!(uu.mul(hc.op()), sc.op().mul(&u));
    }

    fn hole_adjoint_closed_form(hole: &HoleModule) -> GradedOperator {
        let n = hole.n();
        let dim = hole.dim();
        let two = hole.space().tensor(hole.space());
        let mut out = GradedOperator::new_zero(
            two,
            hole.space().clone(),
            Parity::Odd,
            Mode::Exact,
        );
        let fact = |k: i64| -> i64 { (1..=k).product() };
        for a in 0..dim {
            for b in 0..dim {
                let (ha, hb) = (hole.holes(a), hole.holes(b));
                if ha.iter().any(|k| hb.contains(k)) {
                    continue;
                }
                let m = ha.len();
                let r = m + hb.len();
                let concat: Vec<usize> = ha.iter().chain(hb.iter()).cloned().collect();
                let mut union = concat.clone();
                union.sort_unstable();
                let mut inversions = 0;
                for i in 0..concat.len() {
                    for j in (i + 1)..concat.len() {
                        if concat[i] > concat[j] {
                            inversions += 1;
                        }
                    }
                }
                let mut sign = if inversions % 2 == 0 { 1 } else { -1 };
                if (r * m) % 2 != 0 {
                    sign = -sign;
                }
                let num = sign * fact(m as i64 - 1) * fact((r - m) as i64 - 1);
                let den = fact(r as i64 - 1) * fact(n as i64 - 1);
                out.set(
                    hole.state_index(&union),
                    a * dim + b,
                    Scalar::ratio(num, den),
                );
            }
        }
        out
    }

    #[test]
    fn hole_adjoint_matches_closed_form() {
        for n in 2..=4 {
            let hole = HoleModule::new(n);
            let c = sln1_hole_charge(&hole);
            let qd = c.superadjoint(&hole.form());
            assert_eq!(qd, hole_adjoint_closed_form(&hole), "n={n}");
            // the top pair is annihilated
            let top = hole.state_index(&[n]);
            let pair = Vector::basis(c.op().codomain(), top * hole.dim() + top, Mode::Exact);
            assert!(qd.apply(&pair).is_zero(), "n={n}");
        }
    }

    #[test]
    fn hole_ham_matches_projector_expansion() {
        // (n-1)! ham(q) = sum_i 2 h(i) P_i with h the harmonic numbers
        for n in 2..=3 {
            let hole = HoleModule::new(n);
            let c = sln1_hole_charge(&hole);
            let fact: i64 = (1..=(n as i64 - 1)).product();
            let ham = hamiltonian_density(&c, &hole.form(), &Scalar::int(fact));
            let dec = two_site_decomposition(&hole).unwrap();
            let mut expect = GradedOperator::new_zero(
                ham.domain().clone(),
                ham.codomain().clone(),
                Parity::Even,
                Mode::Exact,
            );
            let mut h = BigRational::zero();
            for (i, p) in dec.projectors.iter().enumerate() {
                if i > 0 {
                    h += BigRational::new(2.into(), (i as i64).into());
                }
                expect = expect.add(&p.scale(&Scalar::from_rational(h.clone())));
            }
            assert_eq!(ham, expect, "n={n}");
            assert!(ham.mul(&dec.projectors[0]).is_zero(), "n={n}");
        }
    }

    #[test]
    fn hole_ham_commutes_with_all_generators() {
        for n in 2..=3 {
            let hole = HoleModule::new(n);
            let c = sln1_hole_charge(&hole);
            let ham = hamiltonian_density(&c, &hole.form(), &Scalar::int(1));
            for i in 1..=n + 1 {
                for j in 1..=n + 1 {
                    let dx = coproduct(&hole.generator(i, j), &hole.generator(i, j));
                    assert_eq!(ham.mul(&dx), dx.mul(&ham), "n={n} E_{i}{j}");
                }
            }
        }
    }

    #[test]
    fn hole_ham_eigenvalues_on_highest_weight_vectors() {
        let n = 3;
        let hole = HoleModule::new(n);
        let c = sln1_hole_charge(&hole);
        let fact: i64 = (1..=(n as i64 - 1)).product();
        let ham = hamiltonian_density(&c, &hole.form(), &Scalar::int(fact));
        let hw = hole.highest_weight_vectors();
        let expect = [Scalar::int(0), Scalar::int(2), Scalar::int(3)];
        for (i, v) in hw.iter().enumerate() {
            assert_eq!(ham.apply(v), v.scale(&expect[i]), "component {i}");
        }
    }

    #[test]
    fn charge_serialization_roundtrip() {
        let c = sl21_fundamental_charge(&Scalar::ratio(2, 3));
        let json = serde_json::to_string(&c).unwrap();
        let back: LocalCharge = serde_json::from_str(&json).unwrap();
        assert_eq!(c, back);
        assert!(json.contains("\"omega\":1"));
        let hole = HoleModule::new(3);
        let hc = sln1_hole_charge(&hole);
        let json = serde_json::to_string(&hc).unwrap();
        let back: LocalCharge = serde_json::from_str(&json).unwrap();
        assert_eq!(hc, back);
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic_number(0), BigRational::zero());
        assert_eq!(harmonic_number(1), BigRational::from_i64(1).unwrap());
        assert_eq!(
            harmonic_number(4),
            BigRational::new(25.into(), 12.into())
        );
    }
}
