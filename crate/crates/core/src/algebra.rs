//! Graded Lie superalgebras given by structure constants.
//!
//! A [`GradedSuperalgebra`] is a basis of homogeneous vectors (each with a
//! group degree and a parity) plus a bracket table on ordered basis pairs
//! `(i, j)` with `i <= j`. The mirrored products come from skew-supersymmetry
//! `[x, y] = -(-1)^{|x||y|} [y, x]`. Analysis code only accepts a
//! [`ValidatedAlgebra`], which guarantees the superalgebra axioms and the
//! grading hold on the whole basis.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupElement, GroupError, GroupSpec};
use crate::linalg::{format_scalar, is_zero_vector, zero_vector, Scalar, Vector};
use crate::subspace::GradedSubspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^{ab}`: negative only for two odd arguments.
    pub fn sign(self, other: Parity) -> Scalar {
        if self == Parity::Odd && other == Parity::Odd {
            -Scalar::one()
        } else {
            Scalar::one()
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A homogeneous sector `L_g^p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sector {
    pub degree: GroupElement,
    pub parity: Parity,
}

impl Sector {
    pub fn new(degree: GroupElement, parity: Parity) -> Self {
        Self { degree, parity }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.degree, self.parity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub name: String,
    pub degree: GroupElement,
    pub parity: Parity,
}

impl BasisVector {
    pub fn sector(&self) -> Sector {
        Sector::new(self.degree.clone(), self.parity)
    }
}

/// Sparse linear combination of basis vectors, sorted by index, no zeros.
pub type SparseVector = Vec<(usize, Scalar)>;

fn normalize_sparse(terms: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVector {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, c) in terms {
        *acc.entry(k).or_insert_with(Scalar::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn scale_sparse(v: &SparseVector, c: &Scalar) -> SparseVector {
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("basis index {index} out of range (dimension {dim})")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("basis vector {name:?}: {source}")]
    Degree { name: String, source: GroupError },
    #[error("basis vector {name:?}: torsion coordinate not reduced")]
    UnreducedDegree { name: String },
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("bracket ({left}, {right}) given twice with different values")]
    InconsistentDuplicate { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("vector has length {found}, algebra has dimension {dim}")]
    LengthMismatch { dim: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSuperalgebra {
    group: GroupSpec,
    basis: Vec<BasisVector>,
    /// Canonical products, keys `(i, j)` with `i <= j`.
    table: BTreeMap<(usize, usize), SparseVector>,
    /// Products supplied for `(i, j)` with `i > j`; checked against the
    /// canonical entry by the validator.
    mirrored: BTreeMap<(usize, usize), SparseVector>,
}

impl GradedSuperalgebra {
    pub fn new(group: GroupSpec, basis: Vec<BasisVector>) -> Result<Self, StructureError> {
        group.check()?;
        let mut seen = HashSet::new();
        for b in &basis {
            if !seen.insert(b.name.as_str()) {
                return Err(StructureError::DuplicateName(b.name.clone()));
            }
            if b.degree.coords().len() != group.coordinate_count() {
                return Err(StructureError::Degree {
                    name: b.name.clone(),
                    source: GroupError::DimensionMismatch {
                        expected: group.coordinate_count(),
                        found: b.degree.coords().len(),
                    },
                });
            }
            if !group.conforms(&b.degree) {
                return Err(StructureError::UnreducedDegree { name: b.name.clone() });
            }
        }
        Ok(Self {
            group,
            basis,
            table: BTreeMap::new(),
            mirrored: BTreeMap::new(),
        })
    }

    /// Records `[b_left, b_right] = result`. Pairs with `left > right` are kept
    /// as redundant mirror entries. A repeated pair must repeat the same value.
    pub fn insert_bracket(
        &mut self,
        left: usize,
        right: usize,
        result: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<(), StructureError> {
        let result = self.checked_entry(left, right, result)?;
        let map = if left <= right { &mut self.table } else { &mut self.mirrored };
        match map.get(&(left, right)) {
            Some(prev) if *prev != result => Err(StructureError::InconsistentDuplicate { left, right }),
            _ => {
                map.insert((left, right), result);
                Ok(())
            }
        }
    }

    /// Like [`insert_bracket`](Self::insert_bracket) but overwrites any previous
    /// value for the pair.
    pub fn set_bracket(
        &mut self,
        left: usize,
        right: usize,
        result: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<(), StructureError> {
        let result = self.checked_entry(left, right, result)?;
        let map = if left <= right { &mut self.table } else { &mut self.mirrored };
        if result.is_empty() {
            map.remove(&(left, right));
        } else {
            map.insert((left, right), result);
        }
        Ok(())
    }

    fn checked_entry(
        &self,
        left: usize,
        right: usize,
        result: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<SparseVector, StructureError> {
        let dim = self.dim();
        for index in [left, right] {
            if index >= dim {
                return Err(StructureError::IndexOutOfRange { index, dim });
            }
        }
        let result: Vec<(usize, Scalar)> = result.into_iter().collect();
        if let Some(&(index, _)) = result.iter().find(|(k, _)| *k >= dim) {
            return Err(StructureError::IndexOutOfRange { index, dim });
        }
        Ok(normalize_sparse(result))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Stored entries, canonical ones first, then redundant mirrors.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVector)> {
        self.table.iter().chain(self.mirrored.iter())
    }

    /// Product of basis vectors `i` and `j` as derived from the table.
    pub fn basis_bracket(&self, i: usize, j: usize) -> SparseVector {
        let flip = -self.basis[i].parity.sign(self.basis[j].parity);
        if i <= j {
            if let Some(v) = self.table.get(&(i, j)) {
                return v.clone();
            }
            // Only the mirror was supplied.
            return self
                .mirrored
                .get(&(j, i))
                .map(|v| scale_sparse(v, &flip))
                .unwrap_or_default();
        }
        match self.table.get(&(j, i)) {
            Some(v) => scale_sparse(v, &flip),
            None => self.mirrored.get(&(i, j)).cloned().unwrap_or_default(),
        }
    }

    fn full_table(&self) -> Vec<Vec<SparseVector>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.basis_bracket(i, j)).collect())
            .collect()
    }

    /// Checks the grading, parity, skew-supersymmetry and super Jacobi
    /// conditions on basis elements. An empty report means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.dim();
        for (&(i, j), v) in self.entries() {
            let degree = self.group.multiply(&self.basis[i].degree, &self.basis[j].degree);
            let parity = self.basis[i].parity.add(self.basis[j].parity);
            for (k, _) in v {
                if degree.as_ref() != Ok(&self.basis[*k].degree) {
                    violations.push(Violation::Grading { left: i, right: j, result: *k });
                }
                if self.basis[*k].parity != parity {
                    violations.push(Violation::Parity { left: i, right: j, result: *k });
                }
            }
        }
        for (&(i, j), v) in &self.mirrored {
            if let Some(canon) = self.table.get(&(j, i)) {
                let c = -self.basis[i].parity.sign(self.basis[j].parity);
                if scale_sparse(canon, &c) != *v {
                    violations.push(Violation::SkewSupersymmetry { left: i, right: j });
                }
            }
        }
        for i in 0..n {
            if self.basis[i].parity == Parity::Even && !self.basis_bracket(i, i).is_empty() {
                violations.push(Violation::EvenDiagonal { index: i });
            }
        }
        let table = self.full_table();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let residual = jacobi_residual(&table, &self.basis, x, y, z);
                    if !residual.is_empty() {
                        violations.push(Violation::Jacobi { x, y, z, residual });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn sector_of(&self, i: usize) -> Sector {
        self.basis[i].sector()
    }

    /// Basis indices grouped by sector, in canonical sector order.
    pub fn sectors(&self) -> BTreeMap<Sector, Vec<usize>> {
        let mut out: BTreeMap<Sector, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            out.entry(b.sector()).or_default().push(i);
        }
        out
    }

    /// Renders a vector as a linear combination of basis names.
    pub fn render_vector(&self, v: &[Scalar]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let name = &self.basis[i].name;
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            if !mag.is_one() {
                out.push_str(&format_scalar(&mag));
                out.push('*');
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn bracket_sparse(table: &[Vec<SparseVector>], x: &SparseVector, y: &SparseVector) -> SparseVector {
    let mut terms = Vec::new();
    for (i, a) in x {
        for (j, b) in y {
            let ab = a * b;
            terms.extend(table[*i][*j].iter().map(|(k, c)| (*k, c * &ab)));
        }
    }
    normalize_sparse(terms)
}

/// `[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]` on basis vectors.
fn jacobi_residual(table: &[Vec<SparseVector>], basis: &[BasisVector], x: usize, y: usize, z: usize) -> SparseVector {
    let unit = |i: usize| vec![(i, Scalar::one())];
    let lhs = bracket_sparse(table, &unit(x), &table[y][z]);
    let t1 = bracket_sparse(table, &table[x][y], &unit(z));
    let t2 = bracket_sparse(table, &unit(y), &table[x][z]);
    let s = basis[x].parity.sign(basis[y].parity);
    normalize_sparse(
        lhs.into_iter()
            .chain(t1.into_iter().map(|(k, c)| (k, -c)))
            .chain(t2.into_iter().map(|(k, c)| (k, -(c * &s)))),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `result` appears in `[left, right]` but has the wrong degree.
    Grading { left: usize, right: usize, result: usize },
    Parity { left: usize, right: usize, result: usize },
    /// Redundant mirror entry disagrees with skew-supersymmetry.
    SkewSupersymmetry { left: usize, right: usize },
    /// `[x, x] != 0` for an even basis vector.
    EvenDiagonal { index: usize },
    Jacobi { x: usize, y: usize, z: usize, residual: SparseVector },
}

impl Violation {
    pub fn describe(&self, alg: &GradedSuperalgebra) -> String {
        let name = |i: &usize| alg.basis[*i].name.as_str();
        match self {
            Violation::Grading { left, right, result } => format!(
                "grading: [{}, {}] has a component along {} of degree {}",
                name(left),
                name(right),
                name(result),
                alg.basis[*result].degree
            ),
            Violation::Parity { left, right, result } => format!(
                "parity: [{}, {}] has a component along {} of parity {}",
                name(left),
                name(right),
                name(result),
                alg.basis[*result].parity
            ),
            Violation::SkewSupersymmetry { left, right } => format!(
                "skew-supersymmetry: stored [{}, {}] disagrees with [{}, {}]",
                name(left),
                name(right),
                name(right),
                name(left)
            ),
            Violation::EvenDiagonal { index } => {
                format!("skew-supersymmetry: [{0}, {0}] is nonzero for even {0}", name(index))
            }
            Violation::Jacobi { x, y, z, residual } => {
                let mut dense = zero_vector(alg.dim());
                for (k, c) in residual {
                    dense[*k] = c.clone();
                }
                format!(
                    "super Jacobi: triple ({}, {}, {}) leaves residual {}",
                    name(x),
                    name(y),
                    name(z),
                    alg.render_vector(&dense)
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Error)]
#[error("algebra violates {} axiom condition(s)", .report.violations.len())]
pub struct InvalidAlgebra {
    pub algebra: GradedSuperalgebra,
    pub report: ValidationReport,
}

/// An algebra that passed [`GradedSuperalgebra::validate`], with the full
/// product table cached.
#[derive(Debug, Clone)]
pub struct ValidatedAlgebra {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    alg: GradedSuperalgebra,
    products: Vec<Vec<SparseVector>>,
    sectors: BTreeMap<Sector, Vec<usize>>,
}

impl ValidatedAlgebra {
    pub fn new(alg: GradedSuperalgebra) -> Result<Self, InvalidAlgebra> {
        let report = alg.validate();
        if !report.is_valid() {
            return Err(InvalidAlgebra { algebra: alg, report });
        }
        let products = alg.full_table();
        let sectors = alg.sectors();
        Ok(Self {
            inner: Arc::new(Inner { alg, products, sectors }),
        })
    }

    pub fn algebra(&self) -> &GradedSuperalgebra {
        &self.inner.alg
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVector {
        &self.inner.products[i][j]
    }

    pub fn product_dense(&self, i: usize, j: usize) -> Vector {
        let mut v = zero_vector(self.dim());
        for (k, c) in self.product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, AlgebraError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(AlgebraError::LengthMismatch { dim: n, found: v.len() });
            }
        }
        let mut out = zero_vector(n);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.product(i, j) {
                    out[*k] += c * &ab;
                }
            }
        }
        Ok(out)
    }

    /// `[x, b_j]` for a dense `x`.
    pub fn bracket_with_basis(&self, x: &[Scalar], j: usize) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (k, c) in self.product(i, j) {
                out[*k] += c * a;
            }
        }
        out
    }

    pub fn sector_indices(&self) -> &BTreeMap<Sector, Vec<usize>> {
        &self.inner.sectors
    }

    pub fn sector_dim(&self, s: &Sector) -> usize {
        self.inner.sectors.get(s).map_or(0, Vec::len)
    }

    pub fn degree_dim(&self, g: &GroupElement) -> usize {
        Parity::BOTH
            .iter()
            .map(|&p| self.sector_dim(&Sector::new(g.clone(), p)))
            .sum()
    }

    pub fn identity(&self) -> GroupElement {
        self.group().identity()
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        self.group().inverse(g).expect("degree conforms to group")
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.group().multiply(a, b).expect("degree conforms to group")
    }

    pub fn support(&self) -> Support {
        let id = self.identity();
        let mut sigma = BTreeSet::new();
        let mut even = BTreeSet::new();
        let mut odd = BTreeSet::new();
        for s in self.inner.sectors.keys() {
            if s.degree == id {
                continue;
            }
            sigma.insert(s.degree.clone());
            match s.parity {
                Parity::Even => even.insert(s.degree.clone()),
                Parity::Odd => odd.insert(s.degree.clone()),
            };
        }
        let closed = |set: &BTreeSet<GroupElement>| set.iter().all(|g| set.contains(&self.inverse(g)));
        let symmetric = closed(&even) && closed(&odd);
        Support {
            sigma,
            even,
            odd,
            symmetric,
        }
    }

    /// `L_g^p` as a graded subspace.
    pub fn homogeneous_component(&self, g: &GroupElement, p: Parity) -> GradedSubspace {
        let mut s = GradedSubspace::new(self.dim());
        let sector = Sector::new(g.clone(), p);
        for &i in self.inner.sectors.get(&sector).into_iter().flatten() {
            s.insert_unit(self, i);
        }
        s
    }

    /// `L_g = L_g^0 + L_g^1`.
    pub fn degree_component(&self, g: &GroupElement) -> GradedSubspace {
        let mut s = self.homogeneous_component(g, Parity::Even);
        s.extend(&self.homogeneous_component(g, Parity::Odd));
        s
    }

    pub fn whole(&self) -> GradedSubspace {
        let mut s = GradedSubspace::new(self.dim());
        for i in 0..self.dim() {
            s.insert_unit(self, i);
        }
        s
    }

    /// True iff some bracket of basis vectors in sectors `a` and `b` is nonzero.
    pub fn sectors_bracket_nonzero(&self, a: &Sector, b: &Sector) -> bool {
        let idx = |s: &Sector| self.inner.sectors.get(s).cloned().unwrap_or_default();
        let (ia, ib) = (idx(a), idx(b));
        ia.iter().any(|&i| ib.iter().any(|&j| !self.product(i, j).is_empty()))
    }

    pub fn is_abelian(&self) -> bool {
        self.inner.products.iter().flatten().all(Vec::is_empty)
    }

    pub fn render_vector(&self, v: &[Scalar]) -> String {
        self.algebra().render_vector(v)
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        is_zero_vector(v)
    }
}

impl Deref for ValidatedAlgebra {
    type Target = GradedSuperalgebra;
    fn deref(&self) -> &GradedSuperalgebra {
        &self.inner.alg
    }
}

/// The G-support and its parity refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    /// Non-identity degrees with `L_g != 0`.
    pub sigma: BTreeSet<GroupElement>,
    pub even: BTreeSet<GroupElement>,
    pub odd: BTreeSet<GroupElement>,
    /// `g` in a parity part implies `g^-1` in the same parity part.
    pub symmetric: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::{scalar, unit_vector};

    fn sl2() -> ValidatedAlgebra {
        corpus::load("ex1").unwrap()
    }

    #[test]
    fn sl2_brackets() {
        let a = sl2();
        let (h, e, f) = (a.index_of("h").unwrap(), a.index_of("e").unwrap(), a.index_of("f").unwrap());
        let u = |i| unit_vector(3, i);
        assert_eq!(a.bracket(&u(e), &u(f)).unwrap(), u(h));
        let mut two_e = zero_vector(3);
        two_e[e] = scalar(2);
        assert_eq!(a.bracket(&u(h), &u(e)).unwrap(), two_e);
        let minus: Vector = two_e.iter().map(|x| -x).collect();
        assert_eq!(a.bracket(&u(e), &u(h)).unwrap(), minus);
        assert!(is_zero_vector(&a.bracket(&u(e), &zero_vector(3)).unwrap()));
        assert!(a.bracket(&u(e), &zero_vector(2)).is_err());
    }

    #[test]
    fn odd_diagonal_is_symmetric() {
        let a = corpus::load("ex2").unwrap();
        let x = a.index_of("x").unwrap();
        let e = a.index_of("e").unwrap();
        assert_eq!(a.product(x, x), &vec![(e, scalar(2))]);
        let y = a.index_of("y").unwrap();
        assert_eq!(a.product(x, y), a.product(y, x));
    }

    #[test]
    fn even_diagonal_is_rejected() {
        let mut alg = sl2().algebra().clone();
        let e = alg.index_of("e").unwrap();
        let h = alg.index_of("h").unwrap();
        alg.set_bracket(e, e, [(h, scalar(1))]).unwrap();
        let report = alg.validate();
        assert!(report.violations.contains(&Violation::EvenDiagonal { index: e }));
    }

    #[test]
    fn inconsistent_mirror_is_reported() {
        let mut alg = sl2().algebra().clone();
        let (h, e) = (alg.index_of("h").unwrap(), alg.index_of("e").unwrap());
        // consistent mirror: [e,h] = -2e
        alg.set_bracket(e, h, [(e, scalar(-2))]).unwrap();
        assert!(alg.validate().is_valid());
        let mut bad = sl2().algebra().clone();
        bad.set_bracket(e, h, [(e, scalar(2))]).unwrap();
        assert!(bad
            .validate()
            .violations
            .contains(&Violation::SkewSupersymmetry { left: e, right: h }));
    }

    #[test]
    fn grading_and_parity_violations() {
        let mut alg = sl2().algebra().clone();
        let (h, e, f) = (alg.index_of("h").unwrap(), alg.index_of("e").unwrap(), alg.index_of("f").unwrap());
        alg.set_bracket(h, e, [(f, scalar(1))]).unwrap();
        let v = alg.validate().violations;
        assert!(v.contains(&Violation::Grading { left: h, right: e, result: f }));

        let osp = corpus::load("ex2").unwrap();
        let mut alg = osp.algebra().clone();
        let (x, y, hh) = (alg.index_of("x").unwrap(), alg.index_of("y").unwrap(), alg.index_of("h").unwrap());
        // [h, x] must be odd; send it to h
        alg.set_bracket(hh, x, [(x, scalar(1)), (hh, scalar(1))]).unwrap();
        let v = alg.validate().violations;
        assert!(v.contains(&Violation::Parity { left: hh, right: x, result: hh }));
        assert!(v.contains(&Violation::Grading { left: hh, right: x, result: hh }));
        let _ = y;
    }

    #[test]
    fn structural_errors() {
        let g = GroupSpec::free(1);
        let b = |n: &str, d: i64| BasisVector {
            name: n.into(),
            degree: g.element(&[d]).unwrap(),
            parity: Parity::Even,
        };
        assert_eq!(
            GradedSuperalgebra::new(g.clone(), vec![b("a", 0), b("a", 1)]),
            Err(StructureError::DuplicateName("a".into()))
        );
        let mut alg = GradedSuperalgebra::new(g.clone(), vec![b("a", 0)]).unwrap();
        assert_eq!(
            alg.set_bracket(0, 1, []),
            Err(StructureError::IndexOutOfRange { index: 1, dim: 1 })
        );
        assert_eq!(
            alg.set_bracket(0, 0, [(3, scalar(1))]),
            Err(StructureError::IndexOutOfRange { index: 3, dim: 1 })
        );
        alg.insert_bracket(0, 0, [(0, scalar(1))]).unwrap();
        alg.insert_bracket(0, 0, [(0, scalar(1))]).unwrap();
        assert_eq!(
            alg.insert_bracket(0, 0, [(0, scalar(2))]),
            Err(StructureError::InconsistentDuplicate { left: 0, right: 0 })
        );
    }

    #[test]
    fn support_examples() {
        let z = GroupSpec::free(1);
        let el = |d: i64| z.element(&[d]).unwrap();
        let s = sl2().support();
        assert_eq!(s.sigma, [el(1), el(-1)].into_iter().collect());
        assert_eq!(s.even, s.sigma);
        assert!(s.odd.is_empty());
        assert!(s.symmetric);

        let s = corpus::load("ex2").unwrap().support();
        assert_eq!(s.sigma, [el(1), el(-1), el(2), el(-2)].into_iter().collect());
        assert_eq!(s.even, [el(2), el(-2)].into_iter().collect());
        assert_eq!(s.odd, [el(1), el(-1)].into_iter().collect());
        assert!(s.symmetric);
        assert_eq!(s.sigma, s.even.union(&s.odd).cloned().collect());

        let only_zero = GradedSuperalgebra::new(
            z.clone(),
            vec![BasisVector { name: "c".into(), degree: el(0), parity: Parity::Even }],
        )
        .unwrap();
        let s = ValidatedAlgebra::new(only_zero).unwrap().support();
        assert!(s.sigma.is_empty() && s.symmetric);
    }

    #[test]
    fn homogeneous_component_examples() {
        let a = sl2();
        let one = a.group().element(&[1]).unwrap();
        let c = a.homogeneous_component(&one, Parity::Even);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&a, &unit_vector(3, a.index_of("e").unwrap())));
        assert_eq!(a.homogeneous_component(&one, Parity::Odd).dim(), 0);
        let far = a.group().element(&[7]).unwrap();
        assert_eq!(a.homogeneous_component(&far, Parity::Even).dim(), 0);
    }

    #[test]
    fn bracket_respects_sectors() {
        for name in corpus::names() {
            let a = corpus::load(name).unwrap();
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let target = Sector::new(
                        a.multiply(&a.basis()[i].degree, &a.basis()[j].degree),
                        a.basis()[i].parity.add(a.basis()[j].parity),
                    );
                    for (k, _) in a.product(i, j) {
                        assert_eq!(a.sector_of(*k), target, "{name}: [{i},{j}]");
                    }
                }
            }
        }
    }
}
