//! Classification of weights and deformations that admit a length-changing
//! supersymmetry.
//!
//! Appending one extra Bethe root at nesting level `l` while the chain
//! length changes by one turns the Bethe equations of the longer chain into
//! those of the shorter one, provided a family of cancellations holds.
//! Each cancellation demands that some combination of Dynkin labels vanish,
//! either exactly (rational chain) or modulo the deformation parameter
//! `zeta`, where `q = exp(2 pi i / zeta)`.  This module assembles those
//! combinations, decides which deformations satisfy them, and reports the
//! forced position of the extra root together with the momentum sector and
//! charge statistics.  The conditions are necessary for the paired spectra,
//! not sufficient; the spectrum tools provide the numerical witness.

pub mod bethe;

use crate::error::{Error, Result};
use crate::graded::Parity;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Parity pattern of the weight-space indices `1..=n+m`.
///
/// Everything about the algebra the classifier needs is this bit string:
/// the signs `(-1)^{|i|}`, their partial sums, and which Dynkin nodes sit
/// between indices of equal parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSignature {
    parities: Vec<Parity>,
}

impl AlgebraSignature {
    pub fn new(parities: Vec<Parity>) -> AlgebraSignature {
        assert!(parities.len() >= 2, "need at least two weight-space indices");
        AlgebraSignature { parities }
    }

    /// All even indices first, then all odd ones.
    pub fn distinguished(bosons: usize, fermions: usize) -> AlgebraSignature {
        let mut parities = vec![Parity::Even; bosons];
        parities.extend(std::iter::repeat(Parity::Odd).take(fermions));
        AlgebraSignature::new(parities)
    }

    /// Parses a comma-separated bit string such as `"0,0,1"`.
    pub fn parse(text: &str) -> Result<AlgebraSignature> {
        let mut parities = Vec::new();
        for part in text.split(',') {
            match part.trim() {
                "0" => parities.push(Parity::Even),
                "1" => parities.push(Parity::Odd),
                other => {
                    return Err(Error::InvalidModel(format!(
                        "parity bit must be 0 or 1, got {other:?}"
                    )))
                }
            }
        }
        if parities.len() < 2 {
            return Err(Error::InvalidModel(
                "signature needs at least two parity bits".into(),
            ));
        }
        Ok(AlgebraSignature::new(parities))
    }

    /// Number of weight-space indices, `n + m`.
    pub fn width(&self) -> usize {
        self.parities.len()
    }

    /// Number of Dynkin nodes, `n + m - 1`.
    pub fn rank(&self) -> usize {
        self.width() - 1
    }

    /// Parity of index `i`, counted from 1.
    pub fn parity(&self, i: usize) -> Parity {
        assert!(i >= 1 && i <= self.width(), "index {i} out of range");
        self.parities[i - 1]
    }

    /// `(-1)^{|i|}`.
    pub fn sign(&self, i: usize) -> i64 {
        self.parity(i).sign()
    }

    /// `(-1)^{|k| + |k+1| + 1}`, the statistics sign of Bethe level `k`.
    pub fn level_sign(&self, k: usize) -> i64 {
        -self.sign(k) * self.sign(k + 1)
    }

    /// Partial sum `c_k = sum_{i <= k} (-1)^{|i|}`.
    pub fn cumulative_sign(&self, k: usize) -> i64 {
        (1..=k).map(|i| self.sign(i)).sum()
    }

    /// A node is bosonic when its two neighbouring indices share a parity.
    pub fn node_is_bosonic(&self, level: usize) -> bool {
        assert!(level >= 1 && level <= self.rank(), "node {level} out of range");
        self.parity(level) == self.parity(level + 1)
    }

    /// Counts `(even, odd)` indices.
    pub fn counts(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.width() - odd, odd)
    }
}

/// Which deformations of the chain a query asks about.
#[derive(Clone, Debug, PartialEq)]
pub enum Deformation {
    /// The undeformed chain; every cancellation must hold exactly.
    Rational,
    /// Ask which deformations work at all, via the gcd rule.
    GenericQ,
    /// A fixed deformation `q = exp(2 pi i / zeta)`.
    Zeta(BigRational),
}

/// A representation of the algebra, given by its highest weight, together
/// with the deformation the caller wants classified.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    signature: AlgebraSignature,
    weights: Vec<BigRational>,
    deformation: Deformation,
}

impl ModelSpec {
    pub fn from_weights(
        signature: AlgebraSignature,
        weights: Vec<BigRational>,
        deformation: Deformation,
    ) -> ModelSpec {
        assert_eq!(
            weights.len(),
            signature.width(),
            "one weight component per index"
        );
        if let Deformation::Zeta(zeta) = &deformation {
            assert!(!zeta.is_zero(), "deformation parameter must be nonzero");
        }
        ModelSpec {
            signature,
            weights,
            deformation,
        }
    }

    /// Reconstructs the weight from Dynkin labels in the gauge where the
    /// last component vanishes.  Global weight shifts leave the labels and
    /// every admissibility question unchanged; only the reported extra root
    /// position depends on the gauge.
    pub fn from_dynkin(
        signature: AlgebraSignature,
        labels: &[BigRational],
        deformation: Deformation,
    ) -> ModelSpec {
        assert_eq!(labels.len(), signature.rank(), "one label per Dynkin node");
        let width = signature.width();
        let mut weights = vec![BigRational::zero(); width];
        for i in (1..width).rev() {
            let signed_next = rat(signature.sign(i + 1)) * &weights[i];
            let signed = &labels[i - 1] + signed_next;
            weights[i - 1] = rat(signature.sign(i)) * signed;
        }
        ModelSpec::from_weights(signature, weights, deformation)
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.signature
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn deformation(&self) -> &Deformation {
        &self.deformation
    }

    /// Dynkin labels `a_i = (-1)^{|i|} l_i - (-1)^{|i+1|} l_{i+1}`.
    pub fn dynkin_labels(&self) -> Vec<BigRational> {
        labels_of(&self.signature, &self.weights)
    }
}

fn labels_of(signature: &AlgebraSignature, weights: &[BigRational]) -> Vec<BigRational> {
    (1..signature.width())
        .map(|i| {
            rat(signature.sign(i)) * &weights[i - 1]
                - rat(signature.sign(i + 1)) * &weights[i]
        })
        .collect()
}

/// Whether the extra root shortens or lengthens the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `L -> L - 1`.
    Down,
    /// `L -> L + 1`.
    Up,
}

impl Direction {
    pub fn parse(text: &str) -> Result<Direction> {
        match text.trim() {
            "down" => Ok(Direction::Down),
            "up" => Ok(Direction::Up),
            other => Err(Error::InvalidModel(format!(
                "direction must be \"down\" or \"up\", got {other:?}"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Down => "down",
            Direction::Up => "up",
        }
    }
}

/// Where the extra Bethe root goes and which way the length moves.
#[derive(Clone, Copy, Debug)]
pub struct InsertionQuery {
    /// Nesting level of the new root, `1..=rank`.
    pub level: usize,
    pub direction: Direction,
}

/// The label combinations that must vanish (exactly or modulo `zeta`) for
/// the insertion to map Bethe solutions onto Bethe solutions.
///
/// The vector has one entry per Dynkin node.  Away from the insertion
/// window the entry is the plain label `a_k`, because the momentum-carrying
/// levels scatter with the new root; inside the window the label is shifted
/// by signature signs.  Raising the length at a bosonic node overconstrains
/// the weights for every algebra of rank at least two, hence the error.
pub fn constraint_vector(spec: &ModelSpec, query: &InsertionQuery) -> Result<Vec<BigRational>> {
    let sig = spec.signature();
    let l = query.level;
    assert!(
        l >= 1 && l <= sig.rank(),
        "insertion level {l} out of range"
    );
    let labels = spec.dynkin_labels();
    let s_l = rat(sig.sign(l));
    let s_l1 = rat(sig.sign(l + 1));
    let mut x = labels;
    match (query.direction, sig.node_is_bosonic(l)) {
        (Direction::Down, _) => {
            if l >= 2 {
                x[l - 2] -= &s_l;
            }
            x[l - 1] += &s_l + &s_l1;
            if l + 1 <= sig.rank() {
                x[l] -= &s_l1;
            }
        }
        (Direction::Up, false) => {
            if l >= 2 {
                x[l - 2] += &s_l;
            }
            if l + 1 <= sig.rank() {
                x[l] += &s_l1;
            }
        }
        (Direction::Up, true) => {
            if sig.rank() > 1 {
                return Err(Error::NoSolution(
                    "lengthening at a bosonic level duplicates weight equations \
                     and forces q^2 = 1 whenever the rank exceeds one"
                        .into(),
                ));
            }
            x[0] -= &s_l + &s_l1;
        }
    }
    Ok(x)
}

/// Outcome of the deformation decision tree on a constraint vector.
#[derive(Clone, Debug, PartialEq)]
pub enum GcdOutcome {
    /// Every constraint vanishes: the rational chain works and so does any
    /// deformation.
    AllQ,
    /// `q^A = 1` for the greatest common divisor `A` of the constraints.
    RootOfUnity(BigInt),
    /// A single nonzero non-integer constraint `x`: the family
    /// `zeta = x / m` with `m` a nonzero integer.
    GenericFamily(BigRational),
    /// No deformation makes all cancellations hold.
    Impossible,
}

/// Decides which `zeta` put all constraint values on the lattice `zeta Z`.
///
/// Divisors 1 and 2 are excluded because `q^2 = 1` degenerates the
/// deformed chain to the rational one it was supposed to rescue.
pub fn gcd_rule(constraints: &[BigRational]) -> GcdOutcome {
    let nonzero: Vec<&BigRational> = constraints.iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return GcdOutcome::AllQ;
    }
    if nonzero.len() == 1 && !nonzero[0].is_integer() {
        // The families for x and -x coincide, so report one representative.
        return GcdOutcome::GenericFamily(nonzero[0].abs());
    }
    if nonzero.iter().any(|v| !v.is_integer()) {
        return GcdOutcome::Impossible;
    }
    let mut acc = BigInt::zero();
    for value in nonzero {
        acc = acc.gcd(&value.to_integer());
    }
    if acc == BigInt::one() || acc == 2.into() {
        GcdOutcome::Impossible
    } else {
        GcdOutcome::RootOfUnity(acc)
    }
}

fn rational_admissible(constraints: &[BigRational]) -> bool {
    constraints.iter().all(|v| v.is_zero())
}

fn zeta_admissible(constraints: &[BigRational], zeta: &BigRational) -> bool {
    if (rat(2) / zeta).is_integer() {
        return false;
    }
    constraints.iter().all(|v| (v / zeta).is_integer())
}

/// Position the extra root is forced to take, as an exact rational in the
/// same gauge as the stored weight.  For deformed chains the value is one
/// representative of the coset `u + zeta Z`.
///
/// Every weight inside the insertion window pins the root through its own
/// cancellation equation; the positions must agree (modulo the lattice for
/// deformed chains), which is the same statement as the vanishing of the
/// window constraints.  Disagreement therefore means the query was not
/// admissible in the first place.
pub fn extra_root(spec: &ModelSpec, query: &InsertionQuery) -> Result<BigRational> {
    let sig = spec.signature();
    let l = query.level;
    assert!(
        l >= 1 && l <= sig.rank(),
        "insertion level {l} out of range"
    );
    let half_c = BigRational::new(sig.cumulative_sign(l).into(), 2.into());
    let s_l = rat(sig.sign(l));
    let s_l1 = rat(sig.sign(l + 1));
    let bosonic = sig.node_is_bosonic(l);
    if query.direction == Direction::Up && bosonic && sig.rank() > 1 {
        return Err(Error::NoSolution(
            "lengthening at a bosonic level admits no extra root beyond rank one".into(),
        ));
    }
    // Offset of the cancellation equation for weight l + d relative to c_l/2.
    let offset = |d: i64| -> Option<BigRational> {
        let delta = match (query.direction, bosonic) {
            (Direction::Down, _) => match d {
                -1 | 2 => BigRational::zero(),
                0 => -&s_l,
                1 => s_l1.clone(),
                _ => return None,
            },
            (Direction::Up, false) => match d {
                -1 => -&s_l,
                0 | 1 => BigRational::zero(),
                2 => s_l1.clone(),
                _ => return None,
            },
            (Direction::Up, true) => match d {
                0 => s_l.clone(),
                1 => -&s_l1,
                _ => return None,
            },
        };
        Some(&half_c + delta)
    };
    let mut candidates = Vec::new();
    for d in -1i64..=2 {
        let j = l as i64 + d;
        if j < 1 || j > sig.width() as i64 {
            continue;
        }
        if let Some(k) = offset(d) {
            let j = j as usize;
            candidates.push(rat(sig.sign(j)) * &spec.weights()[j - 1] - k);
        }
    }
    let step = agreement_step(spec, query)?;
    let root = candidates[0].clone();
    for other in &candidates[1..] {
        let diff = &root - other;
        let ok = match &step {
            None => diff.is_zero(),
            Some(zeta) => (diff / zeta).is_integer(),
        };
        if !ok {
            return Err(Error::NoSolution(
                "cancellation equations pin incompatible extra root positions; \
                 the query is not admissible"
                    .into(),
            ));
        }
    }
    Ok(root)
}

/// Lattice step under which the window equations must agree, `None` for
/// exact agreement.
fn agreement_step(spec: &ModelSpec, query: &InsertionQuery) -> Result<Option<BigRational>> {
    Ok(match spec.deformation() {
        Deformation::Rational => None,
        Deformation::Zeta(zeta) => Some(zeta.clone()),
        Deformation::GenericQ => {
            let x = constraint_vector(spec, query)?;
            match gcd_rule(&x) {
                GcdOutcome::AllQ => None,
                GcdOutcome::RootOfUnity(a) => Some(BigRational::from_integer(a)),
                GcdOutcome::GenericFamily(x0) => Some(x0.abs()),
                GcdOutcome::Impossible => None,
            }
        }
    })
}

/// Momentum sector of the paired states and statistics of the implied
/// length-changing charge at the given insertion level.
///
/// A bosonic node pairs states whose translation eigenvalues differ by the
/// sign `(-1)^(L-1)` (the alternate-cyclic sector) and the charge commutes
/// with local fermion number, `omega = -1` in the charge's own grading
/// convention.  A fermionic node pairs plain cyclic states, `omega = +1`.
pub fn sector_and_statistics(signature: &AlgebraSignature, level: usize) -> (&'static str, i64) {
    if signature.node_is_bosonic(level) {
        ("alternate-cyclic", -1)
    } else {
        ("cyclic", 1)
    }
}

/// Index of the weight function that normalizes the transfer eigenvalue so
/// that paired spectra agree across lengths, cyclic in `1..=n+m`.
pub fn normalization_index(signature: &AlgebraSignature, level: usize) -> usize {
    if level == 1 {
        signature.width()
    } else {
        level - 1
    }
}

fn simple_root_labels(signature: &AlgebraSignature, level: usize) -> Vec<BigRational> {
    let mut weights = vec![BigRational::zero(); signature.width()];
    weights[level - 1] = BigRational::one();
    weights[level] = -BigRational::one();
    labels_of(signature, &weights)
}

/// Full answer to one insertion query.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifierVerdict {
    /// Whether the queried deformation satisfies every constraint.
    pub admissible: bool,
    /// Exact constraint values, one per Dynkin node.
    pub constraint_values: Vec<String>,
    /// Gcd-rule outcome: an integer, `"all q"`, `"none"`, or the single
    /// non-integer constraint value that fixes the deformation family.
    pub gcd_a: String,
    /// Human-readable deformation condition for this query.
    pub q_condition: String,
    /// Representative of the forced extra root position, when admissible.
    pub extra_root: Option<String>,
    /// Lattice of equivalent root positions.
    pub extra_root_lattice: Option<String>,
    /// Momentum sector the paired states share.
    pub sector: String,
    /// Statistics sign of the length-changing charge.
    pub charge_parity: i64,
    /// Weight function index normalizing the transfer eigenvalue.
    pub normalization_index: usize,
    /// Whether the labels equal those of the signed simple root at the
    /// insertion node, the pattern that survives the rational limit.
    pub simple_root_match: bool,
    /// The conditions are necessary, not sufficient.
    pub caveat: String,
}

/// Runs the full decision procedure for one model and one insertion query.
pub fn classify(spec: &ModelSpec, query: &InsertionQuery) -> Result<ClassifierVerdict> {
    let x = constraint_vector(spec, query)?;
    let outcome = gcd_rule(&x);
    let gcd_a = match &outcome {
        GcdOutcome::AllQ => "all q".to_string(),
        GcdOutcome::RootOfUnity(a) => a.to_string(),
        GcdOutcome::GenericFamily(x0) => x0.to_string(),
        GcdOutcome::Impossible => "none".to_string(),
    };
    let (admissible, q_condition) = match spec.deformation() {
        Deformation::Rational => (
            rational_admissible(&x),
            "undeformed chain, all constraints must vanish exactly".to_string(),
        ),
        Deformation::GenericQ => match &outcome {
            GcdOutcome::AllQ => (true, "any q, including the rational limit".to_string()),
            GcdOutcome::RootOfUnity(a) => (true, format!("q^{a} = 1 with q^2 != 1")),
            GcdOutcome::GenericFamily(x0) => (
                true,
                format!("q = exp(2 pi i m / ({x0})) for a nonzero integer m"),
            ),
            GcdOutcome::Impossible => (false, "no deformation satisfies the constraints".into()),
        },
        Deformation::Zeta(zeta) => (
            zeta_admissible(&x, zeta),
            format!("q = exp(2 pi i / zeta) with zeta = {zeta}"),
        ),
    };
    let (extra, lattice) = if admissible {
        let root = extra_root(spec, query)?;
        let lattice = match (spec.deformation(), &outcome) {
            (Deformation::Rational, _) => "exact".to_string(),
            (Deformation::Zeta(z), _) => format!("u + zeta Z, zeta = {z}"),
            (Deformation::GenericQ, GcdOutcome::AllQ) => {
                "u + zeta Z for every admissible zeta".to_string()
            }
            (Deformation::GenericQ, GcdOutcome::RootOfUnity(a)) => {
                format!("u + zeta Z, zeta = {a}/m for a nonzero integer m")
            }
            (Deformation::GenericQ, GcdOutcome::GenericFamily(x0)) => {
                format!("u + zeta Z, zeta = ({x0})/m for a nonzero integer m")
            }
            (Deformation::GenericQ, GcdOutcome::Impossible) => unreachable!(),
        };
        (Some(root.to_string()), Some(lattice))
    } else {
        (None, None)
    };
    let (sector, omega) = sector_and_statistics(spec.signature(), query.level);
    let alpha = simple_root_labels(spec.signature(), query.level);
    let target: Vec<BigRational> = match query.direction {
        Direction::Down => alpha.iter().map(|a| -a).collect(),
        Direction::Up => alpha,
    };
    Ok(ClassifierVerdict {
        admissible,
        constraint_values: x.iter().map(|v| v.to_string()).collect(),
        gcd_a,
        q_condition,
        extra_root: extra,
        extra_root_lattice: lattice,
        sector: sector.to_string(),
        charge_parity: omega,
        normalization_index: normalization_index(spec.signature(), query.level),
        simple_root_match: spec.dynkin_labels() == target,
        caveat: "necessary conditions only; degeneracies must be confirmed on the spectrum"
            .to_string(),
    })
}

/// One admissible entry found by the enumeration scan.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateRecord {
    pub labels: Vec<i64>,
    pub level: usize,
    pub direction: String,
    pub verdict: ClassifierVerdict,
}

/// Scans all integer label vectors with `|a_i| <= bound` over every level
/// and direction, returning the admissible ones for the given deformation.
pub fn enumerate_candidates(
    signature: &AlgebraSignature,
    bound: i64,
    deformation: &Deformation,
) -> Vec<CandidateRecord> {
    assert!(bound >= 1, "enumeration bound must be positive");
    let rank = signature.rank();
    let mut labels = vec![-bound; rank];
    let mut found = Vec::new();
    loop {
        let rationals: Vec<BigRational> = labels.iter().map(|&a| rat(a)).collect();
        let spec = ModelSpec::from_dynkin(signature.clone(), &rationals, deformation.clone());
        for level in 1..=rank {
            for direction in [Direction::Down, Direction::Up] {
                let query = InsertionQuery { level, direction };
                if let Ok(verdict) = classify(&spec, &query) {
                    if verdict.admissible {
                        found.push(CandidateRecord {
                            labels: labels.clone(),
                            level,
                            direction: direction.as_str().to_string(),
                            verdict,
                        });
                    }
                }
            }
        }
        // Odometer step through the label box.
        let mut pos = rank;
        loop {
            if pos == 0 {
                return found;
            }
            if labels[pos - 1] < bound {
                labels[pos - 1] += 1;
                break;
            }
            labels[pos - 1] = -bound;
            pos -= 1;
        }
    }
}
