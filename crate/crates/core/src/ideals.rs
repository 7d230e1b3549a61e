//! Class ideals, graded-ideal closure, center and the hypothesis predicates
//! used by the structure theorems.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Parity, Sector, ValidatedAlgebra};
use crate::connections::{connection_class, ConnectionClass, ConnectionError, SupportGraph};
use crate::group::GroupElement;
use crate::linalg::{kernel, unit_vector, zero_vector, Matrix, Vector};
use crate::subspace::GradedSubspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error("class with representative {0} is not a connection class of this algebra")]
    ForeignClass(GroupElement),
}

/// `I = L_{C,1} + V_C` for a connection class `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassIdeal {
    pub class: ConnectionClass,
    /// Span of `[L_g', L_g'^-1]` over `g'` in the class; lives in `L_1`.
    pub one_part: GradedSubspace,
    /// `⊕ L_g'` over the class.
    pub outer_part: GradedSubspace,
    pub total: GradedSubspace,
}

/// `Σ [L_g, L_g^-1]` over the given degrees, as a subspace of `L_1`.
pub fn opposite_bracket_span<'a>(
    alg: &ValidatedAlgebra,
    degrees: impl IntoIterator<Item = &'a GroupElement>,
) -> GradedSubspace {
    let mut out = GradedSubspace::new(alg.dim());
    for g in degrees {
        let gi = alg.inverse(g);
        let left: Vec<usize> = degree_indices(alg, g);
        let right: Vec<usize> = degree_indices(alg, &gi);
        for &i in &left {
            for &j in &right {
                if !alg.product(i, j).is_empty() {
                    out.insert(alg, &alg.product_dense(i, j));
                }
            }
        }
    }
    out
}

fn degree_indices(alg: &ValidatedAlgebra, g: &GroupElement) -> Vec<usize> {
    Parity::BOTH
        .iter()
        .flat_map(|&p| alg.sector_indices().get(&Sector::new(g.clone(), p)).cloned().unwrap_or_default())
        .collect()
}

pub fn class_ideal(alg: &ValidatedAlgebra, c: &ConnectionClass) -> Result<ClassIdeal, IdealError> {
    let sg = SupportGraph::of_algebra(alg);
    let expected = connection_class(&sg, &c.representative).map_err(|e| match e {
        ConnectionError::NotInSupport(g) => IdealError::ForeignClass(g),
        e => IdealError::Connection(e),
    })?;
    if expected.members != c.members {
        return Err(IdealError::ForeignClass(c.representative.clone()));
    }
    let one_part = opposite_bracket_span(alg, &c.members);
    let mut outer_part = GradedSubspace::new(alg.dim());
    for g in &c.members {
        outer_part.extend(&alg.degree_component(g));
    }
    let mut total = one_part.clone();
    total.extend(&outer_part);
    Ok(ClassIdeal {
        class: c.clone(),
        one_part,
        outer_part,
        total,
    })
}

/// A basis element of `s` and an algebra basis index whose bracket leaves `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeWitness {
    pub element: Vector,
    pub basis_index: usize,
    pub bracket: Vector,
}

impl EscapeWitness {
    pub fn describe(&self, alg: &ValidatedAlgebra) -> String {
        format!(
            "[{}, {}] = {} leaves the subspace",
            alg.render_vector(&self.element),
            alg.basis()[self.basis_index].name,
            alg.render_vector(&self.bracket)
        )
    }
}

/// First escaping pair, scanning `s` basis then algebra basis in order.
pub fn ideal_escape(alg: &ValidatedAlgebra, s: &GradedSubspace) -> Option<EscapeWitness> {
    for v in s.basis_vectors() {
        for j in 0..alg.dim() {
            let w = alg.bracket_with_basis(&v, j);
            if !s.contains(alg, &w) {
                return Some(EscapeWitness {
                    element: v,
                    basis_index: j,
                    bracket: w,
                });
            }
        }
    }
    None
}

pub fn is_graded_ideal(alg: &ValidatedAlgebra, s: &GradedSubspace) -> bool {
    ideal_escape(alg, s).is_none()
}

/// Dimension growth of a closure computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureTrace {
    pub generator_dim: usize,
    /// Dimension after each round that added something.
    pub rounds: Vec<usize>,
    pub final_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub ideal: GradedSubspace,
    pub trace: ClosureTrace,
}

/// Graded ideal generated by `generators`.
pub fn ideal_closure(alg: &ValidatedAlgebra, generators: &GradedSubspace) -> GradedSubspace {
    ideal_closure_traced(alg, generators).ideal
}

pub fn ideal_closure_traced(alg: &ValidatedAlgebra, generators: &GradedSubspace) -> Closure {
    let mut ideal = generators.clone();
    let mut frontier = generators.basis_vectors();
    let mut rounds = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for j in 0..alg.dim() {
                let w = alg.bracket_with_basis(v, j);
                if ideal.insert(alg, &w) {
                    next.push(w);
                }
            }
        }
        if !next.is_empty() {
            rounds.push(ideal.dim());
        }
        frontier = next;
    }
    let trace = ClosureTrace {
        generator_dim: generators.dim(),
        rounds,
        final_dim: ideal.dim(),
    };
    Closure { ideal, trace }
}

/// `Z(L)`, computed sector by sector. The center of a graded algebra is
/// graded, so this equals the kernel of the full adjoint map.
pub fn center(alg: &ValidatedAlgebra) -> GradedSubspace {
    let mut out = GradedSubspace::new(alg.dim());
    for (s, idx) in alg.sector_indices() {
        for k in adjoint_kernel(alg, idx) {
            out.insert_in_sector(s.clone(), k);
        }
    }
    out
}

/// Kernel of `v -> ([v, b_0], ..., [v, b_{n-1}])` restricted to the span of
/// `cols`, lifted back to ambient coordinates.
pub(crate) fn adjoint_kernel(alg: &ValidatedAlgebra, cols: &[usize]) -> Vec<Vector> {
    let n = alg.dim();
    let mut m = Matrix::zeros(n * n, cols.len());
    for (c, &i) in cols.iter().enumerate() {
        for j in 0..n {
            for (k, x) in alg.product(i, j) {
                m[(j * n + k, c)] = x.clone();
            }
        }
    }
    kernel(&m)
        .into_iter()
        .map(|k| {
            let mut v = zero_vector(n);
            for (c, &i) in cols.iter().enumerate() {
                v[i] = k[c].clone();
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hypothesis {
    SymmetricSupport,
    CenterZero,
    IdentityGenerated,
    MaximalLength,
    SigmaMultiplicative,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 5] = [
        Hypothesis::SymmetricSupport,
        Hypothesis::CenterZero,
        Hypothesis::IdentityGenerated,
        Hypothesis::MaximalLength,
        Hypothesis::SigmaMultiplicative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::SymmetricSupport => "symmetric_support",
            Hypothesis::CenterZero => "center_zero",
            Hypothesis::IdentityGenerated => "identity_generated",
            Hypothesis::MaximalLength => "maximal_length",
            Hypothesis::SigmaMultiplicative => "sigma_multiplicative",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypothesisWitness {
    /// `g` carries parity `p` but `g^-1` does not.
    AsymmetricSupport { degree: GroupElement, parity: Parity },
    CentralElement { vector: Vector },
    /// A vector of `L_1` outside `Σ [L_g, L_g^-1]`.
    IdentityNotGenerated { vector: Vector },
    ComponentTooLarge { degree: GroupElement, parity: Parity, dim: usize },
    /// `g, g'` and `gg'` in the support with `[L_g^i, L_g'^j] = 0`.
    ZeroBracket { left: Sector, right: Sector },
}

impl HypothesisWitness {
    pub fn hypothesis(&self) -> Hypothesis {
        match self {
            HypothesisWitness::AsymmetricSupport { .. } => Hypothesis::SymmetricSupport,
            HypothesisWitness::CentralElement { .. } => Hypothesis::CenterZero,
            HypothesisWitness::IdentityNotGenerated { .. } => Hypothesis::IdentityGenerated,
            HypothesisWitness::ComponentTooLarge { .. } => Hypothesis::MaximalLength,
            HypothesisWitness::ZeroBracket { .. } => Hypothesis::SigmaMultiplicative,
        }
    }

    pub fn describe(&self, alg: &ValidatedAlgebra) -> String {
        match self {
            HypothesisWitness::AsymmetricSupport { degree, parity } => {
                format!("degree {degree} has a {parity} part but its inverse does not")
            }
            HypothesisWitness::CentralElement { vector } => {
                format!("{} is central", alg.render_vector(vector))
            }
            HypothesisWitness::IdentityNotGenerated { vector } => format!(
                "{} is not in the span of brackets of opposite degrees",
                alg.render_vector(vector)
            ),
            HypothesisWitness::ComponentTooLarge { degree, parity, dim } => {
                format!("component at {degree} parity {parity} has dimension {dim}")
            }
            HypothesisWitness::ZeroBracket { left, right } => {
                format!("[L_{left}, L_{right}] = 0 although the product degree is in the support")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub symmetric_support: bool,
    pub center_zero: bool,
    pub identity_generated: bool,
    pub maximal_length: bool,
    pub sigma_multiplicative: bool,
    /// One witness per failed predicate, in [`Hypothesis::ALL`] order.
    pub witnesses: Vec<HypothesisWitness>,
}

impl HypothesisReport {
    pub fn holds(&self, h: Hypothesis) -> bool {
        match h {
            Hypothesis::SymmetricSupport => self.symmetric_support,
            Hypothesis::CenterZero => self.center_zero,
            Hypothesis::IdentityGenerated => self.identity_generated,
            Hypothesis::MaximalLength => self.maximal_length,
            Hypothesis::SigmaMultiplicative => self.sigma_multiplicative,
        }
    }

    pub fn failed(&self) -> Vec<Hypothesis> {
        Hypothesis::ALL.into_iter().filter(|&h| !self.holds(h)).collect()
    }

    /// Failed members of `required`, empty if all hold.
    pub fn missing(&self, required: &[Hypothesis]) -> Vec<Hypothesis> {
        required.iter().copied().filter(|&h| !self.holds(h)).collect()
    }

    pub fn all_hold(&self) -> bool {
        self.failed().is_empty()
    }

    pub fn witness(&self, h: Hypothesis) -> Option<&HypothesisWitness> {
        self.witnesses.iter().find(|w| w.hypothesis() == h)
    }
}

pub fn hypothesis_report(alg: &ValidatedAlgebra) -> HypothesisReport {
    let support = alg.support();
    let mut witnesses = Vec::new();

    let asym = [(Parity::Even, &support.even), (Parity::Odd, &support.odd)]
        .into_iter()
        .flat_map(|(p, set)| {
            set.iter()
                .filter(|g| !set.contains(&alg.inverse(g)))
                .map(move |g| (g.clone(), p))
        })
        .min();
    if let Some((degree, parity)) = asym.clone() {
        witnesses.push(HypothesisWitness::AsymmetricSupport { degree, parity });
    }

    let z = center(alg);
    if let Some(v) = z.basis_vectors().into_iter().next() {
        witnesses.push(HypothesisWitness::CentralElement { vector: v });
    }

    let id = alg.identity();
    let generated = opposite_bracket_span(alg, &support.sigma);
    let gap = degree_indices(alg, &id)
        .into_iter()
        .map(|i| unit_vector(alg.dim(), i))
        .find(|v| !generated.contains(alg, v));
    if let Some(v) = gap.clone() {
        witnesses.push(HypothesisWitness::IdentityNotGenerated { vector: v });
    }

    let too_large = alg
        .sector_indices()
        .iter()
        .find(|(s, idx)| s.degree != id && idx.len() > 1)
        .map(|(s, idx)| (s.clone(), idx.len()));
    if let Some((s, dim)) = too_large.clone() {
        witnesses.push(HypothesisWitness::ComponentTooLarge {
            degree: s.degree,
            parity: s.parity,
            dim,
        });
    }

    let zero_bracket = multiplicativity_failure(alg);
    if let Some((left, right)) = zero_bracket.clone() {
        witnesses.push(HypothesisWitness::ZeroBracket { left, right });
    }

    HypothesisReport {
        symmetric_support: asym.is_none(),
        center_zero: z.is_zero(),
        identity_generated: gap.is_none(),
        maximal_length: too_large.is_none(),
        sigma_multiplicative: zero_bracket.is_none(),
        witnesses,
    }
}

/// First pair of support sectors `(g, i), (g', j)` with `gg'` in the support
/// and `[L_g^i, L_g'^j] = 0`. Pairs with `gg' = 1` are never in the support,
/// so they are skipped automatically.
fn multiplicativity_failure(alg: &ValidatedAlgebra) -> Option<(Sector, Sector)> {
    let support = alg.support();
    let id = alg.identity();
    let sectors: Vec<&Sector> = alg.sector_indices().keys().filter(|s| s.degree != id).collect();
    for a in &sectors {
        for b in &sectors {
            let prod = alg.multiply(&a.degree, &b.degree);
            if support.sigma.contains(&prod) && !alg.sectors_bracket_nonzero(a, b) {
                return Some(((*a).clone(), (*b).clone()));
            }
        }
    }
    None
}

/// Hypotheses under which gr-simplicity is decided.
pub const SIMPLICITY_HYPOTHESES: [Hypothesis; 3] = [
    Hypothesis::MaximalLength,
    Hypothesis::CenterZero,
    Hypothesis::IdentityGenerated,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotSimpleWitness {
    /// `[L, L] = 0`.
    Abelian,
    /// Closure of the homogeneous component `generator` is a proper ideal.
    ProperIdeal { generator: Sector, closure: Closure },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrSimplicity {
    /// Each support sector generates `L`; the closures are listed.
    Simple { closures: Vec<(Sector, ClosureTrace)> },
    NotSimple(NotSimpleWitness),
    Inapplicable(Vec<Hypothesis>),
}

impl GrSimplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, GrSimplicity::Simple { .. })
    }

    pub fn proper_ideal(&self) -> Option<&GradedSubspace> {
        match self {
            GrSimplicity::NotSimple(NotSimpleWitness::ProperIdeal { closure, .. }) => Some(&closure.ideal),
            _ => None,
        }
    }
}

/// Decides gr-simplicity under maximal length, `Z(L) = 0` and
/// `L_1 = Σ [L_g, L_g^-1]`.
///
/// Why this is complete: a nonzero graded ideal `I` lies in `L_1` or meets
/// some `L_g^i` with `g != 1`. An ideal inside `L_1` is zero under the two
/// last hypotheses. Otherwise `I ∩ L_g^i != 0` and `dim L_g^i = 1`, so `I`
/// contains `L_g^i` and therefore its closure. Hence `L` is gr-simple iff
/// every such closure is all of `L`.
pub fn is_gr_simple(alg: &ValidatedAlgebra) -> GrSimplicity {
    let report = hypothesis_report(alg);
    let missing = report.missing(&SIMPLICITY_HYPOTHESES);
    if !missing.is_empty() {
        return GrSimplicity::Inapplicable(missing);
    }
    gr_simple_under_hypotheses(alg)
}

pub(crate) fn gr_simple_under_hypotheses(alg: &ValidatedAlgebra) -> GrSimplicity {
    if alg.is_abelian() {
        return GrSimplicity::NotSimple(NotSimpleWitness::Abelian);
    }
    let id = alg.identity();
    let mut closures = Vec::new();
    for s in alg.sector_indices().keys().filter(|s| s.degree != id) {
        let gen = alg.homogeneous_component(&s.degree, s.parity);
        let c = ideal_closure_traced(alg, &gen);
        if c.ideal.dim() < alg.dim() {
            return GrSimplicity::NotSimple(NotSimpleWitness::ProperIdeal {
                generator: s.clone(),
                closure: c,
            });
        }
        closures.push((s.clone(), c.trace));
    }
    GrSimplicity::Simple { closures }
}
