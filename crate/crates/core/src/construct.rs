//! Building new algebras from old ones: regrading, renaming, direct sums.

use crate::algebra::{BasisVector, GradedSuperalgebra, StructureError};
use crate::group::{GroupElement, GroupError, GroupSpec};

/// Replaces every basis degree by `map(degree)` in `group`.
///
/// `map` must be a group homomorphism for the result to remain graded; the
/// validator will flag it otherwise.
pub fn regrade(
    alg: &GradedSuperalgebra,
    group: GroupSpec,
    map: impl Fn(&GroupElement) -> Result<GroupElement, GroupError>,
) -> Result<GradedSuperalgebra, StructureError> {
    let basis = alg
        .basis()
        .iter()
        .map(|b| {
            Ok(BasisVector {
                name: b.name.clone(),
                degree: map(&b.degree)?,
                parity: b.parity,
            })
        })
        .collect::<Result<Vec<_>, GroupError>>()?;
    rebuild(alg, group, basis)
}

pub fn rename(alg: &GradedSuperalgebra, f: impl Fn(&str) -> String) -> Result<GradedSuperalgebra, StructureError> {
    let basis = alg
        .basis()
        .iter()
        .map(|b| BasisVector {
            name: f(&b.name),
            ..b.clone()
        })
        .collect();
    rebuild(alg, alg.group().clone(), basis)
}

fn rebuild(
    alg: &GradedSuperalgebra,
    group: GroupSpec,
    basis: Vec<BasisVector>,
) -> Result<GradedSuperalgebra, StructureError> {
    let mut out = GradedSuperalgebra::new(group, basis)?;
    for (&(i, j), v) in alg.entries() {
        out.insert_bracket(i, j, v.iter().cloned())?;
    }
    Ok(out)
}

/// `a ⊕ b` over a common grading group; `b`'s basis follows `a`'s.
pub fn direct_sum(a: &GradedSuperalgebra, b: &GradedSuperalgebra) -> Result<GradedSuperalgebra, StructureError> {
    if a.group() != b.group() {
        return Err(StructureError::Group(GroupError::DimensionMismatch {
            expected: a.group().coordinate_count(),
            found: b.group().coordinate_count(),
        }));
    }
    let shift = a.dim();
    let mut basis = a.basis().to_vec();
    basis.extend(b.basis().iter().cloned());
    let mut out = GradedSuperalgebra::new(a.group().clone(), basis)?;
    for (&(i, j), v) in a.entries() {
        out.insert_bracket(i, j, v.iter().cloned())?;
    }
    for (&(i, j), v) in b.entries() {
        out.insert_bracket(i + shift, j + shift, v.iter().map(|(k, c)| (k + shift, c.clone())))?;
    }
    Ok(out)
}

/// `a ⊕ b` graded by the product of their groups, each summand living on its
/// own coordinates.
pub fn direct_sum_over_product(
    a: &GradedSuperalgebra,
    b: &GradedSuperalgebra,
) -> Result<GradedSuperalgebra, StructureError> {
    let (ga, gb) = (a.group(), b.group());
    let group = ga.product(gb);
    let left = regrade(a, group.clone(), |d| Ok(ga.embed_left(gb, d)))?;
    let right = regrade(b, group, |d| Ok(ga.embed_right(gb, d)))?;
    direct_sum(&left, &right)
}
