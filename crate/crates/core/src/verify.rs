//! Named verification suites over a chain model. Each suite runs a batch of
//! identity checks at desk scale and returns a serializable report with one
//! pass/fail line per check; callers pick the batch by name.

use serde::Serialize;

use crate::chain::{
    gl11_closure_check, global_charge, global_invariance_check, shift_operator, ChainModel,
    CheckReport, SiteRep, IDENTITY_TOL,
};
use crate::error::{Error, Result};
use crate::graded::{GradedOperator, GradedSpace, Vector};
use crate::rmatrix::{
    fundamental_r, fused_r, integrable_hamiltonian_density, transfer_matrix, ybe_check, FusedR,
};
use crate::scalar::{Mode, Scalar};
use crate::spectrum::dimension_cap;
use crate::supercharge::{check_local_invariance, check_local_nilpotency, LocalCharge};

/// A named batch of identity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Local gauge-vector nilpotency plus `Q_{L+1} Q_L = 0` on chains.
    Nilpotency,
    /// Local invariance gauge terms plus global charge/coproduct exchange.
    Invariance,
    /// Agreement of the three equivalent forms of the global charge.
    ThreeForm,
    /// The length-graded closure: nilpotency, HQ commutation, sector split.
    Gl11,
    /// Supercharge-route Hamiltonian density against the R-matrix route.
    HamEquality,
    /// Yang-Baxter samples for the fundamental and fused R-matrices.
    Ybe,
    /// Regularity: `R(0) = P`, transfer at zero, commuting transfers.
    Regularity,
    /// Only the two local checks; the one batch that needs no chain.
    Local,
    /// Every applicable suite above, concatenated.
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite> {
        Ok(match name {
            "nilpotency" => Suite::Nilpotency,
            "invariance" => Suite::Invariance,
            "three-form" => Suite::ThreeForm,
            "gl11" => Suite::Gl11,
            "ham-equality" => Suite::HamEquality,
            "ybe" => Suite::Ybe,
            "regularity" => Suite::Regularity,
            "local" => Suite::Local,
            "all" => Suite::All,
            other => {
                return Err(Error::InvalidModel(format!(
                    "unknown suite {other}; expected one of nilpotency, invariance, \
                     three-form, gl11, ham-equality, ybe, regularity, local, all"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Nilpotency => "nilpotency",
            Suite::Invariance => "invariance",
            Suite::ThreeForm => "three-form",
            Suite::Gl11 => "gl11",
            Suite::HamEquality => "ham-equality",
            Suite::Ybe => "ybe",
            Suite::Regularity => "regularity",
            Suite::Local => "local",
            Suite::All => "all",
        }
    }
}

/// Outcome of one suite run, ready for JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub version: String,
    pub model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub suite: String,
    pub l_max: usize,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

/// Runs one suite against a model. Chain lengths range up to `l_max` where
/// the suite walks lengths; `p` is the spectral unit of the R-matrix checks.
/// Identity violations become failed checks in the report; structural
/// problems (an inapplicable model, a chain over the dimension cap) surface
/// as errors instead.
pub fn run_suite(
    model: &ChainModel,
    suite: Suite,
    l_max: usize,
    p: &Scalar,
) -> Result<VerifyReport> {
    assert!(l_max >= 1, "need l_max >= 1");
    assert!(!p.is_zero(), "spectral unit p must be nonzero");
    assert_eq!(p.mode(), Mode::Exact, "spectral unit p must be exact");
    let checks = match suite {
        Suite::Nilpotency => nilpotency_checks(model, l_max)?,
        Suite::Invariance => invariance_checks(model, l_max)?,
        Suite::ThreeForm => three_form_checks(model, l_max)?,
        Suite::Gl11 => gl11_checks(model, l_max)?,
        Suite::HamEquality => ham_equality_checks(model, p)?,
        Suite::Ybe => ybe_checks(model, p)?,
        Suite::Regularity => regularity_checks(model, l_max, p)?,
        Suite::Local => local_checks(model)?,
        Suite::All => {
            let mut all = Vec::new();
            if model.charge.is_some() {
                all.extend(nilpotency_checks(model, l_max)?);
                all.extend(invariance_checks(model, l_max)?);
                all.extend(three_form_checks(model, l_max)?);
                all.extend(gl11_checks(model, l_max)?);
                if ham_equality_applies(model) {
                    all.extend(ham_equality_checks(model, p)?);
                }
            }
            all.extend(ybe_checks(model, p)?);
            all.extend(regularity_checks(model, l_max, p)?);
            all
        }
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        version: env!("CARGO_PKG_VERSION").into(),
        model: model.name.clone(),
        q: match &model.rep {
            SiteRep::Sl21Fundamental { q } => Some(format!("{q}")),
            _ => None,
        },
        suite: suite.name().into(),
        l_max,
        checks,
        passed,
    })
}

fn require_charge(model: &ChainModel) -> Result<&LocalCharge> {
    model.charge.as_ref().ok_or_else(|| {
        Error::InvalidModel(format!(
            "model {} carries no supercharge; only the ybe and regularity suites apply",
            model.name
        ))
    })
}

/// The largest chain the suite will build must stay under the ambient cap.
fn check_chain_cap(model: &ChainModel, l_top: usize) -> Result<()> {
    let needed = model.dim(l_top);
    let cap = dimension_cap();
    if needed > cap {
        return Err(Error::DimensionCap { needed, cap });
    }
    Ok(())
}

fn op_vanishes(op: &GradedOperator) -> bool {
    match op.mode() {
        Mode::Exact => op.is_zero(),
        Mode::Float => {
            let zero = GradedOperator::new_zero(
                op.domain().clone(),
                op.codomain().clone(),
                op.degree(),
                op.mode(),
            );
            op.approx_eq(&zero, IDENTITY_TOL)
        }
    }
}

fn vector_vanishes(v: &Vector) -> bool {
    match v.mode() {
        Mode::Exact => v.is_zero(),
        Mode::Float => {
            let zero = Vector::zero(v.space().clone(), v.mode());
            v.approx_eq(&zero, IDENTITY_TOL)
        }
    }
}

fn ops_match(a: &GradedOperator, b: &GradedOperator) -> bool {
    match a.mode() {
        Mode::Exact => a.sub(b).is_zero(),
        Mode::Float => a.approx_eq(b, IDENTITY_TOL),
    }
}

fn equality_detail(mode: Mode) -> String {
    match mode {
        Mode::Exact => "exact".into(),
        Mode::Float => format!("within {IDENTITY_TOL:.0e}"),
    }
}

fn equality_check(name: String, lhs: &GradedOperator, rhs: &GradedOperator) -> CheckReport {
    let passed = ops_match(lhs, rhs);
    let detail = if passed {
        equality_detail(lhs.mode())
    } else {
        format!("max deviation {:.3e}", lhs.max_entry_diff(rhs))
    };
    CheckReport {
        name,
        passed,
        detail,
    }
}

fn vanishing_check(name: String, op: &GradedOperator) -> CheckReport {
    let passed = op_vanishes(op);
    let detail = if passed {
        equality_detail(op.mode())
    } else {
        match op.iter().next() {
            Some((r, c, v)) => format!("first nonzero entry ({r},{c}) = {v:?}"),
            None => "nonzero".into(),
        }
    };
    CheckReport {
        name,
        passed,
        detail,
    }
}

fn local_nilpotency_check(charge: &LocalCharge) -> Result<CheckReport> {
    let name = "local nilpotency with vanishing gauge vector".to_string();
    match check_local_nilpotency(charge) {
        Ok(chi) => {
            let passed = vector_vanishes(&chi);
            let detail = if passed {
                "chi = 0".to_string()
            } else {
                "identity closes only with a nonzero gauge vector".to_string()
            };
            Ok(CheckReport {
                name,
                passed,
                detail,
            })
        }
        Err(Error::IdentityFailed(msg)) => Ok(CheckReport {
            name,
            passed: false,
            detail: msg,
        }),
        Err(e) => Err(e),
    }
}

fn local_invariance_check_report(
    charge: &LocalCharge,
    generators: &[(String, GradedOperator)],
) -> Result<CheckReport> {
    let name = "local invariance up to gauge terms".to_string();
    match check_local_invariance(charge, generators) {
        Ok(gauge) => {
            let gauged: Vec<&str> = gauge
                .terms
                .iter()
                .filter(|(_, m)| !vector_vanishes(m))
                .map(|(n, _)| n.as_str())
                .collect();
            let detail = if gauged.is_empty() {
                "no gauge terms".to_string()
            } else {
                format!("gauge terms on {}", gauged.join(", "))
            };
            Ok(CheckReport {
                name,
                passed: true,
                detail,
            })
        }
        Err(Error::IdentityFailed(msg)) => Ok(CheckReport {
            name,
            passed: false,
            detail: msg,
        }),
        Err(e) => Err(e),
    }
}

fn local_checks(model: &ChainModel) -> Result<Vec<CheckReport>> {
    let charge = require_charge(model)?;
    Ok(vec![
        local_nilpotency_check(charge)?,
        local_invariance_check_report(charge, &model.chevalley_generators())?,
    ])
}

fn nilpotency_checks(model: &ChainModel, l_max: usize) -> Result<Vec<CheckReport>> {
    let charge = require_charge(model)?;
    check_chain_cap(model, l_max + 1)?;
    let mut out = vec![local_nilpotency_check(charge)?];
    let mut prev = global_charge(charge, 1)?;
    for l in 1..l_max {
        let next = global_charge(charge, l + 1)?;
        out.push(vanishing_check(
            format!("Q_{} Q_{} = 0", l + 1, l),
            &next.mul(&prev),
        ));
        prev = next;
    }
    Ok(out)
}

fn invariance_checks(model: &ChainModel, l_max: usize) -> Result<Vec<CheckReport>> {
    let charge = require_charge(model)?;
    check_chain_cap(model, l_max + 1)?;
    let generators = model.chevalley_generators();
    let mut out = vec![local_invariance_check_report(charge, &generators)?];
    for l in 1..=l_max {
        let name = format!("global invariance at L = {l}");
        match global_invariance_check(charge, &generators, l) {
            Ok(()) => out.push(CheckReport {
                name,
                passed: true,
                detail: equality_detail(charge.mode()),
            }),
            Err(Error::IdentityFailed(msg)) => out.push(CheckReport {
                name,
                passed: false,
                detail: msg,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn three_form_checks(model: &ChainModel, l_max: usize) -> Result<Vec<CheckReport>> {
    let charge = require_charge(model)?;
    check_chain_cap(model, l_max + 1)?;
    let mut out = Vec::new();
    for l in 1..=l_max {
        let name = format!("three forms of the global charge agree at L = {l}");
        match global_charge(charge, l) {
            Ok(_) => out.push(CheckReport {
                name,
                passed: true,
                detail: equality_detail(charge.mode()),
            }),
            Err(Error::IdentityFailed(msg)) => out.push(CheckReport {
                name,
                passed: false,
                detail: msg,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn gl11_checks(model: &ChainModel, l_max: usize) -> Result<Vec<CheckReport>> {
    let charge = require_charge(model)?;
    let l_top = l_max.max(2);
    check_chain_cap(model, l_top + 1)?;
    gl11_closure_check(charge, &model.form, l_top)
}

fn ham_equality_applies(model: &ChainModel) -> bool {
    match &model.rep {
        SiteRep::Sl21Fundamental { q } => q.is_one(),
        SiteRep::Hole(hole) => hole.n() <= 5,
        SiteRep::SpinHalf => false,
    }
}

fn ham_equality_checks(model: &ChainModel, p: &Scalar) -> Result<Vec<CheckReport>> {
    match &model.rep {
        SiteRep::Sl21Fundamental { q } => {
            if !q.is_one() {
                return Err(Error::InvalidModel(
                    "the fundamental-model Hamiltonian cross-check applies at q = 1 only".into(),
                ));
            }
            let mode = model.mode();
            let two = model.site.tensor(&model.site);
            let expect = GradedOperator::identity(&two, mode).sub(&GradedOperator::graded_swap(
                &model.site,
                &model.site,
                mode,
            ));
            Ok(vec![equality_check(
                "density equals 1 - P".into(),
                &model.density,
                &expect,
            )])
        }
        SiteRep::Hole(hole) => {
            let n = hole.n();
            let factorial: i64 = (1..n as i64).product::<i64>().max(1);
            let lhs = model.density.scale(&Scalar::int(factorial));
            if n <= 4 {
                let rhs = integrable_hamiltonian_density(n, p)?;
                Ok(vec![equality_check(
                    "supercharge density matches the R-matrix density".into(),
                    &lhs,
                    &rhs,
                )])
            } else if n == 5 {
                // full matrices get expensive here; the highest weight
                // vectors of the two-site product span one vector per
                // irreducible component, which pins the density
                let fused = FusedR::new(n, p)?;
                let mut out = Vec::new();
                for (i, v) in hole.highest_weight_vectors().iter().enumerate() {
                    let a = lhs.apply(v);
                    let b = fused.hamiltonian_apply(v)?;
                    let passed = a.sub(&b).is_zero();
                    out.push(CheckReport {
                        name: format!("route agreement on the highest weight vector v_{i}"),
                        passed,
                        detail: if passed {
                            "exact".into()
                        } else {
                            format!("max deviation {:.3e}", a.max_entry_diff(&b))
                        },
                    });
                }
                Ok(out)
            } else {
                Err(Error::InvalidModel(
                    "the Hamiltonian cross-check is implemented for n <= 5".into(),
                ))
            }
        }
        SiteRep::SpinHalf => Err(Error::InvalidModel(
            "the Heisenberg chain has no supercharge route to compare".into(),
        )),
    }
}

/// Space the fundamental R-matrix acts on: the site itself, except for hole
/// chains, where it is the underlying fundamental space being fused.
fn fundamental_site(model: &ChainModel) -> GradedSpace {
    match &model.rep {
        SiteRep::Hole(hole) => hole.fundamental().clone(),
        _ => model.site.clone(),
    }
}

fn ybe_samples() -> Vec<(Scalar, Scalar)> {
    [
        (1, 2, 1, 4),
        (-1, 3, 1, 1),
        (2, 3, -5, 7),
        (0, 1, 1, 3),
        (1, 5, 1, 5),
        (3, 2, -1, 2),
        (-2, 1, 1, 7),
        (1, 6, 5, 6),
        (-3, 4, 2, 5),
        (1, 1, -1, 1),
    ]
    .iter()
    .map(|&(a, b, c, d)| (Scalar::ratio(a, b), Scalar::ratio(c, d)))
    .collect()
}

fn ybe_report(
    name: String,
    r: &crate::graded::PolyOperator,
    site: &GradedSpace,
    samples: &[(Scalar, Scalar)],
) -> Result<CheckReport> {
    match ybe_check(r, site, samples) {
        Ok(()) => Ok(CheckReport {
            name,
            passed: true,
            detail: "exact".into(),
        }),
        Err(Error::IdentityFailed(msg)) => Ok(CheckReport {
            name,
            passed: false,
            detail: msg,
        }),
        Err(e) => Err(e),
    }
}

fn ybe_checks(model: &ChainModel, p: &Scalar) -> Result<Vec<CheckReport>> {
    let samples = ybe_samples();
    let space = fundamental_site(model);
    let r = fundamental_r(&space, p);
    let mut out = vec![ybe_report(
        format!("fundamental Yang-Baxter at {} sample pairs", samples.len()),
        &r,
        &space,
        &samples,
    )?];
    if let SiteRep::Hole(hole) = &model.rep {
        let n = hole.n();
        if n <= 4 {
            // polynomial entries grow with n; past n = 3 a spot check at a
            // few pairs keeps the suite responsive
            let subset: &[(Scalar, Scalar)] = if n <= 3 { &samples } else { &samples[..5] };
            let fused = fused_r(n, p)?;
            out.push(ybe_report(
                format!("fused Yang-Baxter at {} sample pairs", subset.len()),
                &fused,
                hole.space(),
                subset,
            )?);
        }
    }
    Ok(out)
}

fn regularity_checks(model: &ChainModel, l_max: usize, p: &Scalar) -> Result<Vec<CheckReport>> {
    let cap = dimension_cap();
    let space = fundamental_site(model);
    let r = fundamental_r(&space, p);
    let swap = GradedOperator::graded_swap(&space, &space, Mode::Exact);
    let mut out = vec![equality_check(
        "fundamental R(0) equals the graded permutation".into(),
        &r.eval(&Scalar::int(0)),
        &swap,
    )];

    // single-site transfer must be affine with slope str(V)/p
    let t1 = transfer_matrix(&r, &space, &space, 1);
    let id = GradedOperator::identity(&space, Mode::Exact);
    let str_v: i64 = (0..space.dim())
        .map(|i| if space.parity(i).is_odd() { -1 } else { 1 })
        .sum();
    let slope = id.scale(&(&Scalar::int(str_v) * &p.inv()));
    let affine = t1.degree_u().is_some_and(|d| d <= 1)
        && t1.coeffs()[0].sub(&id).is_zero()
        && t1
            .coeffs()
            .get(1)
            .map_or(str_v == 0, |c| c.sub(&slope).is_zero());
    out.push(CheckReport {
        name: "single-site transfer is affine with slope str(V)/p".into(),
        passed: affine,
        detail: if affine {
            format!("T_1(u) = ({str_v}/{p}) u + 1")
        } else {
            "unexpected coefficients".into()
        },
    });

    // transfer regularity and commutation on the longest affordable chain
    let mut l_top = 1;
    for l in 2..=l_max.min(3) {
        if space.dim().pow(l as u32 + 1) <= cap {
            l_top = l;
        }
    }
    for l in 2..=l_top {
        let t = transfer_matrix(&r, &space, &space, l);
        out.push(equality_check(
            format!("transfer at zero equals the shift, L = {l}"),
            &t.eval(&Scalar::int(0)),
            &shift_operator(&space, l, Mode::Exact),
        ));
        if l == l_top {
            let tu = t.eval(&Scalar::ratio(1, 2));
            let tv = t.eval(&Scalar::ratio(-1, 3));
            out.push(vanishing_check(
                format!("transfer matrices commute, L = {l}"),
                &tu.mul(&tv).sub(&tv.mul(&tu)),
            ));
        }
    }

    if let SiteRep::Hole(hole) = &model.rep {
        let n = hole.n();
        if n <= 4 {
            let fused = FusedR::new(n, p)?;
            let hs = hole.space();
            let swap = GradedOperator::graded_swap(hs, hs, Mode::Exact);
            out.push(equality_check(
                "fused R(0) equals the graded permutation".into(),
                &fused.eval(&Scalar::int(0))?,
                &swap,
            ));
            if hs.dim().pow(3) <= cap {
                let poly = fused.poly()?;
                let t = transfer_matrix(&poly, hs, hs, 2);
                out.push(equality_check(
                    "fused transfer at zero equals the shift, L = 2".into(),
                    &t.eval(&Scalar::int(0)),
                    &shift_operator(hs, 2, Mode::Exact),
                ));
            }
        }
    }
    Ok(out)
}
