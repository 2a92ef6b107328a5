use super::op::{GradedOperator, Vector};
use super::space::{GradedSpace, Parity};
use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};
use std::collections::BTreeMap;

/// Dense univariate polynomial with scalar coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    mode: Mode,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mode: Mode, coeffs: Vec<Scalar>) -> Self {
        let mut p = Poly { mode, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        for c in &self.coeffs {
            assert_eq!(c.mode(), self.mode, "poly coefficient mode mismatch");
        }
    }

    pub fn zero(mode: Mode) -> Self {
        Poly { mode, coeffs: vec![] }
    }

    pub fn constant(c: Scalar) -> Self {
        let mode = c.mode();
        Poly::new(mode, vec![c])
    }

    /// The monomial `u`.
    pub fn x(mode: Mode) -> Self {
        Poly::new(mode, vec![Scalar::zero(mode), Scalar::one(mode)])
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.mode))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn eval(&self, u: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.mode);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * u) + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.mode, rhs.mode, "poly mode mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::new(self.mode, coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.mode, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.mode, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.mode, rhs.mode, "poly mode mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.mode);
        }
        let mut coeffs = vec![Scalar::zero(self.mode); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::new(self.mode, coeffs)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.mode);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let k = Scalar::int(k as i64);
                let k = match self.mode {
                    Mode::Exact => k,
                    Mode::Float => Scalar::from_complex(k.to_complex()),
                };
                c * &k
            })
            .collect();
        Poly::new(self.mode, coeffs)
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        assert_eq!(self.mode, divisor.mode, "poly mode mismatch");
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Ok(Poly::zero(self.mode));
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree().unwrap();
        if nd < dd {
            return Err(Error::InexactDivision(format!(
                "degree {nd} not divisible by degree {dd}"
            )));
        }
        let lead = divisor.coeff(dd);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(self.mode); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&q * dc);
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision("nonzero remainder".into()));
        }
        Ok(Poly::new(self.mode, quot))
    }

    /// Builds `prod_k (u - roots[k])` times `scale`.
    pub fn from_roots(mode: Mode, roots: &[Scalar], scale: &Scalar) -> Poly {
        let mut p = Poly::constant(scale.clone());
        for r in roots {
            let factor = Poly::new(mode, vec![-r, Scalar::one(mode)]);
            p = p.mul(&factor);
        }
        p
    }
}

/// Polynomial with graded operator coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyOperator {
    domain: GradedSpace,
    codomain: GradedSpace,
    degree: Parity,
    mode: Mode,
    coeffs: Vec<GradedOperator>,
}

impl PolyOperator {
    pub fn new_zero(domain: GradedSpace, codomain: GradedSpace, degree: Parity, mode: Mode) -> Self {
        PolyOperator {
            domain,
            codomain,
            degree,
            mode,
            coeffs: vec![],
        }
    }

    pub fn from_coeffs(coeffs: Vec<GradedOperator>) -> Self {
        assert!(!coeffs.is_empty(), "need at least one coefficient");
        let first = &coeffs[0];
        let mut p = PolyOperator {
            domain: first.domain().clone(),
            codomain: first.codomain().clone(),
            degree: first.degree(),
            mode: first.mode(),
            coeffs,
        };
        for c in &p.coeffs {
            assert_eq!(c.domain(), &p.domain);
            assert_eq!(c.codomain(), &p.codomain);
            assert_eq!(c.degree(), p.degree);
            assert_eq!(c.mode(), p.mode);
        }
        p.trim();
        p
    }

    pub fn constant(op: GradedOperator) -> Self {
        PolyOperator::from_coeffs(vec![op])
    }

    /// `a + u b` from two operators.
    pub fn linear(a: GradedOperator, b: GradedOperator) -> Self {
        PolyOperator::from_coeffs(vec![a, b])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn zero_coeff(&self) -> GradedOperator {
        GradedOperator::new_zero(
            self.domain.clone(),
            self.codomain.clone(),
            self.degree,
            self.mode,
        )
    }

    pub fn domain(&self) -> &GradedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedSpace {
        &self.codomain
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn coeff(&self, k: usize) -> GradedOperator {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero_coeff())
    }

    pub fn coeffs(&self) -> &[GradedOperator] {
        &self.coeffs
    }

    pub fn degree_u(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, u: &Scalar) -> GradedOperator {
        let mut acc = self.zero_coeff();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(u).add(c);
        }
        acc
    }

    pub fn add(&self, rhs: &PolyOperator) -> PolyOperator {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs: Vec<GradedOperator> = (0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect();
        let mut p = PolyOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            degree: self.degree,
            mode: self.mode,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn sub(&self, rhs: &PolyOperator) -> PolyOperator {
        self.add(&rhs.scale_scalar(&-Scalar::one(rhs.mode)))
    }

    pub fn scale_scalar(&self, s: &Scalar) -> PolyOperator {
        let mut p = self.clone();
        for c in &mut p.coeffs {
            *c = c.scale(s);
        }
        p.trim();
        p
    }

    /// Multiplies by a scalar polynomial.
    pub fn scale_poly(&self, s: &Poly) -> PolyOperator {
        if s.is_zero() || self.is_zero() {
            return PolyOperator::new_zero(
                self.domain.clone(),
                self.codomain.clone(),
                self.degree,
                self.mode,
            );
        }
        let mut coeffs =
            vec![self.zero_coeff(); self.coeffs.len() + s.coeffs().len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in s.coeffs().iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.scale(b));
            }
        }
        PolyOperator::from_coeffs(coeffs)
    }

    /// Composition `self(u) . rhs(u)` as operator polynomials.
    pub fn mul(&self, rhs: &PolyOperator) -> PolyOperator {
        if self.is_zero() || rhs.is_zero() {
            return PolyOperator::new_zero(
                rhs.domain.clone(),
                self.codomain.clone(),
                self.degree ^ rhs.degree,
                self.mode,
            );
        }
        let mut coeffs: Vec<GradedOperator> = Vec::new();
        for k in 0..self.coeffs.len() + rhs.coeffs.len() - 1 {
            let mut acc: Option<GradedOperator> = None;
            for i in 0..=k {
                let j = k - i;
                if i >= self.coeffs.len() || j >= rhs.coeffs.len() {
                    continue;
                }
                let term = self.coeffs[i].mul(&rhs.coeffs[j]);
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
            coeffs.push(acc.expect("at least one term per coefficient"));
        }
        PolyOperator::from_coeffs(coeffs)
    }

    pub fn derivative(&self) -> PolyOperator {
        if self.coeffs.len() <= 1 {
            return PolyOperator::new_zero(
                self.domain.clone(),
                self.codomain.clone(),
                self.degree,
                self.mode,
            );
        }
        let coeffs: Vec<GradedOperator> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let k = match self.mode {
                    Mode::Exact => Scalar::int(k as i64),
                    Mode::Float => Scalar::from_f64(k as f64),
                };
                c.scale(&k)
            })
            .collect();
        PolyOperator::from_coeffs(coeffs)
    }

    pub fn partial_supertrace_first(
        &self,
        aux: &GradedSpace,
        dom_rest: &GradedSpace,
        cod_rest: &GradedSpace,
    ) -> PolyOperator {
        if self.is_zero() {
            return PolyOperator::new_zero(dom_rest.clone(), cod_rest.clone(), self.degree, self.mode);
        }
        PolyOperator::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| c.partial_supertrace_first(aux, dom_rest, cod_rest))
                .collect(),
        )
    }

    /// Entry `(row, col)` as a scalar polynomial.
    pub fn entry_poly(&self, row: usize, col: usize) -> Poly {
        Poly::new(
            self.mode,
            self.coeffs.iter().map(|c| c.get(row, col)).collect(),
        )
    }

    pub fn set_entry_poly(&mut self, row: usize, col: usize, p: &Poly) {
        while self.coeffs.len() < p.coeffs().len() {
            let z = self.zero_coeff();
            self.coeffs.push(z);
        }
        for (k, c) in self.coeffs.iter_mut().enumerate() {
            c.set(row, col, p.coeff(k));
        }
        self.trim();
    }

    /// Divides every entry by a scalar polynomial, requiring exactness.
    pub fn div_exact_scalar(&self, divisor: &Poly) -> Result<PolyOperator> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Ok(self.clone());
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree_u().unwrap();
        if nd < dd {
            return Err(Error::InexactDivision(format!(
                "operator degree {nd} not divisible by degree {dd}"
            )));
        }
        let lead_inv = divisor.coeff(dd).inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.zero_coeff(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].scale(&lead_inv);
            if !q.is_zero() {
                for j in 0..=dd {
                    let t = q.scale(&divisor.coeff(j));
                    rem[k + j] = rem[k + j].sub(&t);
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(
                "operator polynomial has nonzero remainder".into(),
            ));
        }
        let mut p = PolyOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            degree: self.degree,
            mode: self.mode,
            coeffs: quot,
        };
        p.trim();
        Ok(p)
    }
}

/// Sparse vector whose entries are polynomials in one variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector {
    space: GradedSpace,
    mode: Mode,
    entries: BTreeMap<usize, Poly>,
}

impl PolyVector {
    pub fn zero(space: GradedSpace, mode: Mode) -> Self {
        PolyVector {
            space,
            mode,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_vector(v: &Vector) -> Self {
        let mut out = PolyVector::zero(v.space().clone(), v.mode());
        for (i, s) in v.iter() {
            out.set(i, Poly::constant(s.clone()));
        }
        out
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn set(&mut self, i: usize, p: Poly) {
        assert!(i < self.space.dim());
        if p.is_zero() {
            self.entries.remove(&i);
        } else {
            assert_eq!(p.mode(), self.mode);
            self.entries.insert(i, p);
        }
    }

    pub fn add_to(&mut self, i: usize, p: &Poly) {
        let cur = self.get(i);
        self.set(i, cur.add(p));
    }

    pub fn get(&self, i: usize) -> Poly {
        self.entries.get(&i).cloned().unwrap_or_else(|| Poly::zero(self.mode))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.entries.iter().map(|(&i, p)| (i, p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, rhs: &PolyVector) -> PolyVector {
        assert_eq!(self.space, rhs.space);
        let mut out = self.clone();
        for (i, p) in rhs.iter() {
            out.add_to(i, p);
        }
        out
    }

    pub fn scale_poly(&self, s: &Poly) -> PolyVector {
        let mut out = PolyVector::zero(self.space.clone(), self.mode);
        for (i, p) in self.iter() {
            out.set(i, p.mul(s));
        }
        out
    }

    /// Applies a constant operator entrywise.
    pub fn apply_op(&self, op: &GradedOperator) -> PolyVector {
        assert_eq!(op.domain(), &self.space, "operator domain mismatch");
        let mut out = PolyVector::zero(op.codomain().clone(), self.mode);
        for (r, c, v) in op.iter() {
            if let Some(p) = self.entries.get(&c) {
                out.add_to(r, &p.scale(v));
            }
        }
        out
    }

    /// Applies a polynomial operator, convolving in the variable.
    pub fn apply_poly_op(&self, op: &PolyOperator) -> PolyVector {
        let mut out = PolyVector::zero(op.codomain().clone(), self.mode);
        let mut shift = Poly::constant(Scalar::one(self.mode));
        let x = Poly::x(self.mode);
        for c in op.coeffs() {
            let applied = self.apply_op(c).scale_poly(&shift);
            out = out.add(&applied);
            shift = shift.mul(&x);
        }
        out
    }

    pub fn eval(&self, u: &Scalar) -> Vector {
        let mut out = Vector::zero(self.space.clone(), self.mode);
        for (i, p) in self.iter() {
            out.set(i, p.eval(u));
        }
        out
    }
}
