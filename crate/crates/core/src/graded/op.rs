use super::form::BilinearForm;
use super::space::{decode_multi, encode_multi, GradedSpace, Parity};
use crate::scalar::{Mode, Scalar};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Sparse linear map between graded spaces with a definite Z2 degree.
///
/// Entries live in one arithmetic mode and every stored entry respects
/// `parity(row) = parity(col) xor degree`; violating either is a caller bug
/// and panics. Instances are immutable once built by the constructors here.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator {
    domain: GradedSpace,
    codomain: GradedSpace,
    degree: Parity,
    mode: Mode,
    // keyed (col, row) so columns are contiguous during composition
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl GradedOperator {
    pub fn new_zero(domain: GradedSpace, codomain: GradedSpace, degree: Parity, mode: Mode) -> Self {
        GradedOperator {
            domain,
            codomain,
            degree,
            mode,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(space: &GradedSpace, mode: Mode) -> Self {
        let mut op = GradedOperator::new_zero(space.clone(), space.clone(), Parity::Even, mode);
        for i in 0..space.dim() {
            op.set(i, i, Scalar::one(mode));
        }
        op
    }

    /// Diagonal operator with entry `(-1)^{parity(i)}`.
    pub fn grading(space: &GradedSpace, mode: Mode) -> Self {
        let mut op = GradedOperator::new_zero(space.clone(), space.clone(), Parity::Even, mode);
        for i in 0..space.dim() {
            let one = Scalar::one(mode);
            let val = if space.parity(i).is_odd() { -one } else { one };
            op.set(i, i, val);
        }
        op
    }

    /// Diagonal operator from explicit values; its degree is even.
    pub fn from_diagonal(space: &GradedSpace, values: &[Scalar], mode: Mode) -> Self {
        assert_eq!(values.len(), space.dim());
        let mut op = GradedOperator::new_zero(space.clone(), space.clone(), Parity::Even, mode);
        for (i, v) in values.iter().enumerate() {
            op.set(i, i, v.clone());
        }
        op
    }

    /// Elementary matrix unit `e_row e_col^T` with the degree the grading forces.
    pub fn matrix_unit(
        domain: &GradedSpace,
        codomain: &GradedSpace,
        row: usize,
        col: usize,
        mode: Mode,
    ) -> Self {
        let degree = codomain.parity(row) ^ domain.parity(col);
        let mut op = GradedOperator::new_zero(domain.clone(), codomain.clone(), degree, mode);
        op.set(row, col, Scalar::one(mode));
        op
    }

    pub fn domain(&self) -> &GradedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedSpace {
        &self.codomain
    }

    pub fn degree(&self) -> Parity {
        self.degree
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sets one entry, dropping numerical zeros.
    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.codomain.dim() && col < self.domain.dim(), "entry out of range");
        if value.is_zero() {
            self.entries.remove(&(col, row));
            return;
        }
        assert_eq!(value.mode(), self.mode, "scalar mode does not match operator");
        assert_eq!(
            self.codomain.parity(row) ^ self.domain.parity(col),
            self.degree,
            "entry ({row},{col}) violates the declared operator degree"
        );
        self.entries.insert((col, row), value);
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Scalar) {
        let current = self.get(row, col);
        self.set(row, col, &current + value);
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries
            .get(&(col, row))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.mode))
    }

    /// Iterates entries as `(row, col, value)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(c, r), v)| (r, c, v))
    }

    fn column(&self, col: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries
            .range((col, 0)..(col + 1, 0))
            .map(|(&(_, r), v)| (r, v))
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(v.space, self.domain, "vector space does not match operator domain");
        assert_eq!(v.mode, self.mode, "vector mode does not match operator");
        let mut out = Vector::zero(self.codomain.clone(), self.mode);
        for (&c, vc) in &v.entries {
            for (r, a) in self.column(c) {
                out.add_to(r, &(a * vc));
            }
        }
        out
    }

    /// Composition `self . rhs`.
    pub fn mul(&self, rhs: &GradedOperator) -> GradedOperator {
        assert_eq!(self.domain, rhs.codomain, "composition shape mismatch");
        assert_eq!(self.mode, rhs.mode, "composition mode mismatch");
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(c, k), bval) in &rhs.entries {
            for (r, aval) in self.column(k) {
                let term = aval * bval;
                match acc.get_mut(&(c, r)) {
                    Some(s) => *s += &term,
                    None => {
                        acc.insert((c, r), term);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        GradedOperator {
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            degree: self.degree ^ rhs.degree,
            mode: self.mode,
            entries: acc,
        }
    }

    pub fn add(&self, rhs: &GradedOperator) -> GradedOperator {
        assert_eq!(self.domain, rhs.domain, "sum domain mismatch");
        assert_eq!(self.codomain, rhs.codomain, "sum codomain mismatch");
        assert_eq!(self.degree, rhs.degree, "sum degree mismatch");
        assert_eq!(self.mode, rhs.mode, "sum mode mismatch");
        let mut out = self.clone();
        for (&(c, r), v) in &rhs.entries {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, rhs: &GradedOperator) -> GradedOperator {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> GradedOperator {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = -&*v;
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> GradedOperator {
        assert_eq!(s.mode(), self.mode, "scale mode mismatch");
        if s.is_zero() {
            return GradedOperator::new_zero(
                self.domain.clone(),
                self.codomain.clone(),
                self.degree,
                self.mode,
            );
        }
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = &*v * s;
        }
        out
    }

    /// Plain matrix Kronecker product, no Koszul signs.
    pub fn kron_plain(&self, other: &GradedOperator) -> GradedOperator {
        self.kron_impl(other, false)
    }

    /// Graded tensor product: `(A (x) B)(v (x) w) = (-1)^{|B||v|} Av (x) Bw`.
    pub fn kron_graded(&self, other: &GradedOperator) -> GradedOperator {
        self.kron_impl(other, true)
    }

    fn kron_impl(&self, other: &GradedOperator, graded: bool) -> GradedOperator {
        assert_eq!(self.mode, other.mode, "tensor mode mismatch");
        let domain = self.domain.tensor(&other.domain);
        let codomain = self.codomain.tensor(&other.codomain);
        let mut out =
            GradedOperator::new_zero(domain, codomain, self.degree ^ other.degree, self.mode);
        let sign_active = graded && other.degree.is_odd();
        for (r1, c1, a) in self.iter() {
            let flip = sign_active && self.domain.parity(c1).is_odd();
            for (r2, c2, b) in other.iter() {
                let mut val = a * b;
                if flip {
                    val = -val;
                }
                out.set(
                    r1 * other.codomain.dim() + r2,
                    c1 * other.domain.dim() + c2,
                    val,
                );
            }
        }
        out
    }

    /// Adjoint with respect to bilinear forms on domain and codomain:
    /// `<O^+ w, v> = (-1)^{|O||w|} <w, O v>`.
    pub fn superadjoint(&self, g_dom: &BilinearForm, g_cod: &BilinearForm) -> GradedOperator {
        assert_eq!(g_dom.space(), &self.domain, "domain form mismatch");
        assert_eq!(g_cod.space(), &self.codomain, "codomain form mismatch");
        let mut out = GradedOperator::new_zero(
            self.codomain.clone(),
            self.domain.clone(),
            self.degree,
            self.mode,
        );
        for (r, c, v) in self.iter() {
            let mut val = &(v * g_cod.diag(r)) / g_dom.diag(c);
            if self.degree.is_odd() && self.codomain.parity(r).is_odd() {
                val = -val;
            }
            out.set(c, r, val);
        }
        out
    }

    /// Supertrace over the first tensor factor of an operator
    /// `aux (x) V -> aux (x) W`.
    pub fn partial_supertrace_first(
        &self,
        aux: &GradedSpace,
        dom_rest: &GradedSpace,
        cod_rest: &GradedSpace,
    ) -> GradedOperator {
        assert_eq!(&aux.tensor(dom_rest), &self.domain, "domain does not factor as aux (x) rest");
        assert_eq!(&aux.tensor(cod_rest), &self.codomain, "codomain does not factor as aux (x) rest");
        let mut out =
            GradedOperator::new_zero(dom_rest.clone(), cod_rest.clone(), self.degree, self.mode);
        let dv = dom_rest.dim();
        let dw = cod_rest.dim();
        for (r, c, v) in self.iter() {
            let (i, b) = (r / dw, r % dw);
            let (j, a) = (c / dv, c % dv);
            if i != j {
                continue;
            }
            let term = if aux.parity(i).is_odd() { -v } else { v.clone() };
            out.add_to(b, a, &term);
        }
        out
    }

    pub fn supertrace(&self) -> Scalar {
        assert_eq!(self.domain, self.codomain, "supertrace of non-square operator");
        let mut acc = Scalar::zero(self.mode);
        for i in 0..self.domain.dim() {
            let d = self.get(i, i);
            if self.domain.parity(i).is_odd() {
                acc -= &d;
            } else {
                acc += &d;
            }
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.domain, self.codomain, "trace of non-square operator");
        let mut acc = Scalar::zero(self.mode);
        for i in 0..self.domain.dim() {
            acc += &self.get(i, i);
        }
        acc
    }

    /// Koszul-signed permutation of tensor factors; `perm[a]` is the slot
    /// factor `a` is sent to.
    pub fn permute_factors(factors: &[&GradedSpace], perm: &[usize], mode: Mode) -> GradedOperator {
        let t = factors.len();
        assert_eq!(perm.len(), t);
        let mut seen = vec![false; t];
        for &p in perm {
            assert!(p < t && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut inv = vec![0; t];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let dest_factors: Vec<&GradedSpace> = inv.iter().map(|&a| factors[a]).collect();
        let domain = GradedSpace::tensor_all(factors);
        let codomain = GradedSpace::tensor_all(&dest_factors);
        let mut out = GradedOperator::new_zero(domain.clone(), codomain, Parity::Even, mode);
        let mut dest_idx = vec![0; t];
        for flat in 0..domain.dim() {
            let idx = decode_multi(factors, flat);
            let mut odd_crossings = 0usize;
            for a in 0..t {
                for b in (a + 1)..t {
                    if perm[a] > perm[b]
                        && factors[a].parity(idx[a]).is_odd()
                        && factors[b].parity(idx[b]).is_odd()
                    {
                        odd_crossings += 1;
                    }
                }
            }
            for a in 0..t {
                dest_idx[perm[a]] = idx[a];
            }
            let row = encode_multi(&dest_factors, &dest_idx);
            let one = Scalar::one(mode);
            out.set(row, flat, if odd_crossings % 2 == 1 { -one } else { one });
        }
        out
    }

    /// The graded flip `v (x) w -> (-1)^{|v||w|} w (x) v`.
    pub fn graded_swap(v: &GradedSpace, w: &GradedSpace, mode: Mode) -> GradedOperator {
        GradedOperator::permute_factors(&[v, w], &[1, 0], mode)
    }

    pub fn to_float(&self) -> GradedOperator {
        let mut out = GradedOperator::new_zero(
            self.domain.clone(),
            self.codomain.clone(),
            self.degree,
            Mode::Float,
        );
        for (r, c, v) in self.iter() {
            out.set(r, c, Scalar::from_complex(v.to_complex()));
        }
        out
    }

    /// Largest entrywise difference, measured numerically.
    pub fn max_entry_diff(&self, other: &GradedOperator) -> f64 {
        assert_eq!(self.domain.dim(), other.domain.dim());
        assert_eq!(self.codomain.dim(), other.codomain.dim());
        let mut keys: Vec<(usize, usize)> = self.entries.keys().cloned().collect();
        keys.extend(other.entries.keys().cloned());
        keys.sort_unstable();
        keys.dedup();
        let mut worst = 0.0f64;
        for (c, r) in keys {
            let d = (self.get(r, c).to_complex() - other.get(r, c).to_complex()).norm();
            worst = worst.max(d);
        }
        worst
    }

    pub fn approx_eq(&self, other: &GradedOperator, tol: f64) -> bool {
        self.max_entry_diff(other) <= tol
    }
}

impl Serialize for GradedOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut entries: Vec<(usize, usize, Scalar)> =
            self.iter().map(|(r, c, v)| (r, c, v.clone())).collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        OperatorRepr {
            domain_dim: self.domain.dim(),
            codomain_dim: self.codomain.dim(),
            domain_parity: self.domain.parities().iter().map(|p| p.bit() as u8).collect(),
            codomain_parity: self.codomain.parities().iter().map(|p| p.bit() as u8).collect(),
            degree: self.degree.bit() as u8,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GradedOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = OperatorRepr::deserialize(deserializer)?;
        if repr.domain_parity.len() != repr.domain_dim
            || repr.codomain_parity.len() != repr.codomain_dim
        {
            return Err(serde::de::Error::custom("parity array length does not match dimension"));
        }
        let domain = GradedSpace::new(
            repr.domain_parity.iter().map(|&b| Parity::from_bit(b as usize)).collect(),
        );
        let codomain = GradedSpace::new(
            repr.codomain_parity.iter().map(|&b| Parity::from_bit(b as usize)).collect(),
        );
        let mode = repr
            .entries
            .first()
            .map(|(_, _, s)| s.mode())
            .unwrap_or(Mode::Exact);
        let mut op = GradedOperator::new_zero(
            domain,
            codomain,
            Parity::from_bit(repr.degree as usize),
            mode,
        );
        for (r, c, v) in repr.entries {
            if r >= op.codomain.dim() || c >= op.domain.dim() {
                return Err(serde::de::Error::custom("entry index out of range"));
            }
            if op.codomain.parity(r) ^ op.domain.parity(c) != op.degree {
                return Err(serde::de::Error::custom("entry violates declared degree"));
            }
            if v.mode() != mode {
                return Err(serde::de::Error::custom("mixed scalar modes in entries"));
            }
            op.set(r, c, v);
        }
        Ok(op)
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    domain_dim: usize,
    codomain_dim: usize,
    domain_parity: Vec<u8>,
    codomain_parity: Vec<u8>,
    degree: u8,
    entries: Vec<(usize, usize, Scalar)>,
}

/// Sparse vector in a graded space.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    space: GradedSpace,
    mode: Mode,
    entries: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero(space: GradedSpace, mode: Mode) -> Self {
        Vector {
            space,
            mode,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(space: &GradedSpace, i: usize, mode: Mode) -> Self {
        let mut v = Vector::zero(space.clone(), mode);
        v.set(i, Scalar::one(mode));
        v
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn set(&mut self, i: usize, value: Scalar) {
        assert!(i < self.space.dim(), "index out of range");
        if value.is_zero() {
            self.entries.remove(&i);
        } else {
            assert_eq!(value.mode(), self.mode, "scalar mode does not match vector");
            self.entries.insert(i, value);
        }
    }

    pub fn add_to(&mut self, i: usize, value: &Scalar) {
        let current = self.get(i);
        self.set(i, &current + value);
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.mode))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(&i, v)| (i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&self, rhs: &Vector) -> Vector {
        assert_eq!(self.space, rhs.space, "vector sum space mismatch");
        assert_eq!(self.mode, rhs.mode, "vector sum mode mismatch");
        let mut out = self.clone();
        for (i, v) in rhs.iter() {
            out.add_to(i, v);
        }
        out
    }

    pub fn sub(&self, rhs: &Vector) -> Vector {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Vector {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = -&*v;
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        assert_eq!(s.mode(), self.mode, "scale mode mismatch");
        if s.is_zero() {
            return Vector::zero(self.space.clone(), self.mode);
        }
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = &*v * s;
        }
        out
    }

    /// Plain tensor product of vectors; signs only ever come from maps
    /// moving past vectors, never from the vectors themselves.
    pub fn tensor(&self, rhs: &Vector) -> Vector {
        assert_eq!(self.mode, rhs.mode, "tensor mode mismatch");
        let mut out = Vector::zero(self.space.tensor(&rhs.space), self.mode);
        for (i, a) in self.iter() {
            for (j, b) in rhs.iter() {
                out.set(i * rhs.space.dim() + j, a * b);
            }
        }
        out
    }

    /// Common parity of the support, or `None` for zero or mixed vectors.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (i, _) in self.iter() {
            let p = self.space.parity(i);
            match found {
                None => found = Some(p),
                Some(q) if q == p => {}
                Some(_) => return None,
            }
        }
        found
    }

    pub fn to_float(&self) -> Vector {
        let mut out = Vector::zero(self.space.clone(), Mode::Float);
        for (i, v) in self.iter() {
            out.set(i, Scalar::from_complex(v.to_complex()));
        }
        out
    }

    pub fn max_entry_diff(&self, other: &Vector) -> f64 {
        assert_eq!(self.space.dim(), other.space.dim());
        let mut keys: Vec<usize> = self.entries.keys().cloned().collect();
        keys.extend(other.entries.keys().cloned());
        keys.sort_unstable();
        keys.dedup();
        let mut worst = 0.0f64;
        for i in keys {
            worst = worst.max((self.get(i).to_complex() - other.get(i).to_complex()).norm());
        }
        worst
    }

    pub fn approx_eq(&self, other: &Vector, tol: f64) -> bool {
        self.max_entry_diff(other) <= tol
    }
}
