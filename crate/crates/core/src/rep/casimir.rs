//! Quadratic Casimir on two sites and the projector decomposition it induces.

use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

use super::hole::HoleModule;
use super::coproduct;
use crate::error::{Error, Result};
use crate::graded::{GradedOperator, Parity};
use crate::scalar::{Mode, Scalar};

/// Casimir eigenvalue on the irreducible gl(n|1) module with highest weight
/// `(lambda_1..lambda_n | lambda_{n+1})`, normalized so the two-site
/// components of the hole module sit at `i(i+1)`.
pub fn casimir_value(n: usize, weight: &[BigRational]) -> BigRational {
    assert!(n >= 2, "normalization needs n >= 2");
    assert_eq!(weight.len(), n + 1);
    let shift = weight.iter().sum::<BigRational>()
        / BigRational::from_usize(n - 1).unwrap();
    let mut even_part = BigRational::zero();
    for k in 1..=n {
        let l = &weight[k - 1];
        let a = l - &shift;
        let b = l + BigRational::from_i64(n as i64 - 2 * k as i64).unwrap() - &shift;
        even_part += a * b;
    }
    let l = &weight[n];
    let odd_part = (l + &shift) * (l + BigRational::from_usize(n).unwrap() + &shift);
    -(even_part - odd_part) / BigRational::from_i64(2).unwrap()
}

/// Highest weights of the irreducible components of the two-site hole
/// module, ordered by Casimir eigenvalue `i(i+1)` for `i = 0..n-1`.
pub fn component_highest_weights(n: usize) -> Vec<Vec<BigRational>> {
    let mut out = Vec::with_capacity(n);
    let mut w0 = vec![BigRational::from_i64(2).unwrap(); n - 1];
    w0.push(BigRational::zero());
    w0.push(BigRational::zero());
    out.push(w0);
    for i in 1..n {
        let mut w = vec![BigRational::from_i64(2).unwrap(); n - 1 - i];
        w.extend(vec![BigRational::one(); i + 1]);
        w.push(BigRational::from_usize(i - 1).unwrap());
        out.push(w);
    }
    out
}

/// Two-site Casimir data on the hole module: the normalized Casimir with
/// spectrum `{i(i+1)}`, the orthogonal projectors onto its eigenspaces, and
/// the label operator `J = sum_i i P_i`.
pub struct TwoSiteDecomposition {
    pub casimir: GradedOperator,
    pub projectors: Vec<GradedOperator>,
    pub label: GradedOperator,
}

/// Builds the normalized two-site Casimir of the hole module and splits it
/// into eigenprojectors, verifying completeness, orthogonality and the
/// expected spectrum along the way.
pub fn two_site_decomposition(hole: &HoleModule) -> Result<TwoSiteDecomposition> {
    let n = hole.n();
    let space = hole.space().tensor(hole.space());
    let id = GradedOperator::identity(&space, Mode::Exact);

    // raw invariant: sum over ij of (-1)^{|j|} Delta(E_ij) Delta(E_ji);
    // the column-parity sign is what makes the sum central
    let mut raw = GradedOperator::new_zero(space.clone(), space.clone(), Parity::Even, Mode::Exact);
    for i in 1..=n + 1 {
        for j in 1..=n + 1 {
            let eij = hole.generator(i, j);
            let eji = hole.generator(j, i);
            let term = coproduct(&eij, &eij).mul(&coproduct(&eji, &eji));
            if j == n + 1 {
                raw = raw.sub(&term);
            } else {
                raw = raw.add(&term);
            }
        }
    }

    // normalize affinely so the first two components land on 0 and 2
    let hw = hole.highest_weight_vectors();
    let eigenvalue_on = |op: &GradedOperator, v: &crate::graded::Vector| -> Result<Scalar> {
        let image = op.apply(v);
        let (idx, lead) = v.iter().next().expect("nonzero vector");
        let value = &image.get(idx) / lead;
        if image != v.scale(&value) {
            return Err(Error::UnexpectedSpectrum(
                "two-site invariant is not scalar on a component".into(),
            ));
        }
        Ok(value)
    };
    let c0 = eigenvalue_on(&raw, &hw[0])?;
    let c1 = eigenvalue_on(&raw, &hw[1])?;
    let gap = &c1 - &c0;
    if gap.is_zero() {
        return Err(Error::UnexpectedSpectrum(
            "degenerate normalization points".into(),
        ));
    }
    let a = &Scalar::int(2) / &gap;
    let b = -&(&a * &c0);
    let casimir = raw.scale(&a).add(&id.scale(&b));

    // eigenprojectors by Lagrange interpolation at i(i+1)
    let ev = |i: usize| Scalar::int((i * (i + 1)) as i64);
    let mut projectors = Vec::with_capacity(n);
    for i in 0..n {
        let mut proj = id.clone();
        for j in 0..n {
            if j == i {
                continue;
            }
            let denom = &ev(i) - &ev(j);
            let factor = casimir.sub(&id.scale(&ev(j))).scale(&(&Scalar::int(1) / &denom));
            proj = proj.mul(&factor);
        }
        projectors.push(proj);
    }

    // the interpolation is only valid if the spectrum is exactly {i(i+1)}
    let mut sum = GradedOperator::new_zero(space.clone(), space.clone(), Parity::Even, Mode::Exact);
    let mut weighted = sum.clone();
    for (i, p) in projectors.iter().enumerate() {
        if p.mul(p) != *p {
            return Err(Error::UnexpectedSpectrum(format!(
                "projector {i} is not idempotent"
            )));
        }
        for (j, q) in projectors.iter().enumerate() {
            if i != j && !p.mul(q).is_zero() {
                return Err(Error::UnexpectedSpectrum(format!(
                    "projectors {i} and {j} overlap"
                )));
            }
        }
        sum = sum.add(p);
        weighted = weighted.add(&p.scale(&ev(i)));
    }
    if sum != id {
        return Err(Error::UnexpectedSpectrum("projectors are not complete".into()));
    }
    if weighted != casimir {
        return Err(Error::UnexpectedSpectrum(
            "Casimir spectrum differs from i(i+1)".into(),
        ));
    }

    let mut label = GradedOperator::new_zero(space.clone(), space, Parity::Even, Mode::Exact);
    for (i, p) in projectors.iter().enumerate() {
        label = label.add(&p.scale(&Scalar::int(i as i64)));
    }

    Ok(TwoSiteDecomposition {
        casimir,
        projectors,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn rat(v: i64) -> BigRational {
        BigRational::from_i64(v).unwrap()
    }

    #[test]
    fn closed_form_reproduces_component_eigenvalues() {
        for n in 2..=6 {
            for (i, w) in component_highest_weights(n).iter().enumerate() {
                assert_eq!(
                    casimir_value(n, w),
                    rat((i * (i + 1)) as i64),
                    "n={n} i={i}"
                );
            }
        }
    }

    #[test]
    fn closed_form_known_values() {
        assert_eq!(casimir_value(2, &[rat(2), rat(0), rat(0)]), rat(0));
        assert_eq!(casimir_value(2, &[rat(1), rat(1), rat(0)]), rat(2));
        assert_eq!(casimir_value(3, &[rat(1), rat(1), rat(1), rat(1)]), rat(6));
    }

    #[test]
    fn decomposition_for_two_holes() {
        let h = HoleModule::new(2);
        let d = two_site_decomposition(&h).unwrap();
        assert_eq!(d.projectors.len(), 2);
        // super-symmetric square of C^{2|1} has dimension 5, the square 4
        assert_eq!(d.projectors[0].trace().as_exact().unwrap().to_i64().unwrap(), 5);
        assert_eq!(d.projectors[1].trace().as_exact().unwrap().to_i64().unwrap(), 4);
    }

    #[test]
    fn decomposition_ranks_fill_the_square() {
        for n in 2..=3 {
            let h = HoleModule::new(n);
            let d = two_site_decomposition(&h).unwrap();
            let total: i64 = d
                .projectors
                .iter()
                .map(|p| p.trace().as_exact().unwrap().to_i64().unwrap())
                .sum();
            let dim = (1i64 << n) - 1;
            assert_eq!(total, dim * dim, "n={n}");
            for v in h.highest_weight_vectors().iter().enumerate() {
                let (i, vec) = v;
                assert_eq!(d.projectors[i].apply(vec), *vec, "n={n} component {i}");
            }
        }
    }
}
