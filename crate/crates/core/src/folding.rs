//! Folding a code along a permutation group: orbit-wise coordinate sums,
//! predicted folded duals for symmetric alternant and Goppa codes, and the
//! checks comparing predictions with folds computed directly.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{code_equal, permute_vector, CodeError, CodeKind, CodeSpec, LinearCode};
use crate::field::{Elem, Field, SubfieldView};
use crate::invariant::{decompose_invariant, invariant_generator, solve_alpha, AffineMap, InvariantError};
use crate::poly::Poly;
use crate::symmetry::{
    induced_permutation, orbit_partition, symmetric_generator, GroupParams, GroupSpec, OrbitPartition, PermGroup,
    Permutation, SymmetryError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    #[error("orbit partition covers {expected} positions, code has {actual}")]
    PartitionMismatch { expected: usize, actual: usize },
    #[error("the fixed point of the map lies in the support")]
    FixedPointInSupport,
    #[error("orbits are not all of size {0}")]
    ShortOrbit(u64),
    #[error("multiplier is not of the form y_σ(i) = a^d y_i")]
    IncompatibleMultiplier,
    #[error("Goppa polynomial does not satisfy Γ(az+b) = αΓ(z)")]
    NotInvariant,
    #[error("permutation does not commute with the subgroup generators")]
    NotCommuting,
    #[error("lifted permutation depends on the orbit representative")]
    NotWellDefined,
    #[error("only alternant and Goppa codes can be folded")]
    UnsupportedKind,
    #[error("internal consistency check failed: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// c̄_j = Σ_{g∈G} c_{g(i_j)} over the orbits of G, ordered by representative.
pub fn fold_vector(field: &Field, v: &[Elem], group: &PermGroup) -> Vec<Elem> {
    group
        .orbits()
        .representatives()
        .into_iter()
        .map(|i| group.elements().iter().fold(Elem::ZERO, |acc, g| field.add(acc, v[g.image(i)])))
        .collect()
}

pub fn fold_code(code: &LinearCode, group: &PermGroup) -> Result<LinearCode, FoldError> {
    if group.degree() != code.len() {
        return Err(FoldError::PartitionMismatch { expected: group.degree(), actual: code.len() });
    }
    let f = code.field();
    let rows: Vec<Vec<Elem>> = code.generator().row_iter().map(|r| fold_vector(f, r, group)).collect();
    Ok(LinearCode::from_rows(f, group.orbits().len(), &rows))
}

/// {Σ_{g∈G} c^g : c ∈ C}, a full-length code constant on orbits.
pub fn group_subcode(code: &LinearCode, group: &PermGroup) -> LinearCode {
    let f = code.field();
    let rows: Vec<Vec<Elem>> = code
        .generator()
        .row_iter()
        .map(|r| {
            let mut acc = vec![Elem::ZERO; r.len()];
            for g in group.elements() {
                for (a, b) in acc.iter_mut().zip(permute_vector(r, g.as_slice())) {
                    *a = f.add(*a, b);
                }
            }
            acc
        })
        .collect();
    LinearCode::from_rows(f, code.len(), &rows)
}

/// {c + c^σ + ... + c^{σ^{ℓ-1}} : c ∈ C}.
pub fn sigma_subcode(code: &LinearCode, sigma: &Permutation) -> LinearCode {
    group_subcode(code, &PermGroup::cyclic(sigma))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimLaw {
    Holds,
    Fails,
    /// No generator matrix closed under the group was found, or some orbit is short.
    Unverifiable,
}

/// Folding a code with a group-closed generator divides both length and
/// dimension by |G|.
pub fn check_dim_law(code: &LinearCode, group: &PermGroup, seed: u64) -> Result<DimLaw, FoldError> {
    let g = group.order();
    if g == 1 {
        return Ok(DimLaw::Holds);
    }
    if !group.orbits().all_of_size(g) {
        return Ok(DimLaw::Unverifiable);
    }
    let attempts = 64 * (code.dim() / g + 1);
    if symmetric_generator(code, group, seed, attempts).is_none() {
        return Ok(DimLaw::Unverifiable);
    }
    let folded = fold_code(code, group)?;
    Ok(if folded.dim() * g == code.dim() && folded.len() * g == code.len() { DimLaw::Holds } else { DimLaw::Fails })
}

/// A permutation of the orbits of a subgroup, induced by a permutation
/// commuting with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedPermutation {
    pub perm: Permutation,
    pub order: u64,
}

pub fn lift_permutation(
    sigma: &Permutation,
    orbits: &OrbitPartition,
    subgroup: &[Permutation],
) -> Result<LiftedPermutation, FoldError> {
    if orbits.degree() != sigma.len() {
        return Err(FoldError::PartitionMismatch { expected: orbits.degree(), actual: sigma.len() });
    }
    if subgroup.iter().any(|g| sigma.compose(g) != g.compose(sigma)) {
        return Err(FoldError::NotCommuting);
    }
    let images = orbits
        .orbits()
        .iter()
        .map(|orbit| {
            let target = orbits.orbit_of(sigma.image(orbit[0]));
            if orbit.iter().all(|&u| orbits.orbit_of(sigma.image(u)) == target) {
                Ok(target)
            } else {
                Err(FoldError::NotWellDefined)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let perm = Permutation::new(images).ok_or(FoldError::NotWellDefined)?;
    let order = perm.order();
    Ok(LiftedPermutation { perm, order })
}

/// Folds generator by generator, lifting each generator to the orbits of
/// the previous ones. Returns the final code and the lifts used.
pub fn fold_group_iterative(
    code: &LinearCode,
    generators: &[Permutation],
) -> Result<(LinearCode, Vec<LiftedPermutation>), FoldError> {
    let n = code.len();
    let mut current = code.clone();
    let mut lifts = Vec::with_capacity(generators.len());
    for k in 0..generators.len() {
        let orbits = orbit_partition(n, &generators[..k])?;
        let lifted = lift_permutation(&generators[k], &orbits, &generators[..k])?;
        current = fold_code(&current, &PermGroup::cyclic(&lifted.perm))?;
        lifts.push(lifted);
    }
    Ok((current, lifts))
}

/// ⌊num/den⌋ + 1, clamped at zero.
fn floor_plus_one(num: i64, den: i64) -> usize {
    (num.div_euclid(den) + 1).max(0) as usize
}

/// Parameters of the alternant code whose dual is the predicted fold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternantFold {
    pub degree: usize,
    pub support: Vec<Elem>,
    pub multiplier: Vec<Elem>,
    /// y_σ(i) = a^d y_i.
    pub d: u64,
    /// Exponent of (x - u0) in the folded multiplier.
    pub exponent: u64,
    pub representatives: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoppaFold {
    pub support: Vec<Elem>,
    pub polynomial: Poly,
    /// Γ(σ(z)) = a^d Γ(z).
    pub d: u64,
    pub representatives: Vec<usize>,
}

/// Orbit representatives of the induced permutation, checking that every
/// orbit has full size.
fn full_orbit_representatives(field: &Field, x: &[Elem], map: &AffineMap) -> Result<(Permutation, Vec<usize>), FoldError> {
    let ip = induced_permutation(field, x, map)?;
    if ip.fixes_a_position() {
        return Err(FoldError::FixedPointInSupport);
    }
    let orbits = orbit_partition(x.len(), std::slice::from_ref(&ip.perm))?;
    if !orbits.all_of_size(map.order() as usize) {
        return Err(FoldError::ShortOrbit(map.order()));
    }
    Ok((ip.perm, orbits.representatives()))
}

fn folded_support(field: &Field, x: &[Elem], reps: &[usize], map: &AffineMap) -> Result<Vec<Elem>, FoldError> {
    let r = invariant_generator(field, map);
    let out: Vec<Elem> = reps.iter().map(|&i| r.eval(field, x[i])).collect();
    let mut seen = std::collections::HashSet::new();
    if !out.iter().all(|e| seen.insert(*e)) {
        return Err(FoldError::Internal("folded support has repeated entries"));
    }
    Ok(out)
}

/// Predicted fold of A_t(x, y)^⊥ along the map: the dual of A_r(x', y') with
/// x'_j = R(x_{i_j}) for the invariant generator R, and
///   translation: r = ⌊(t - p)/p⌋ + 1, y'_j = y_{i_j};
///   a ≠ 1:       r = ⌊(t - 1 - e)/ℓ⌋ + 1, y'_j = y_{i_j} (x_{i_j} - u0)^e,
/// where e = (ℓ - d) mod ℓ.
pub fn predict_fold_alternant(
    field: &Field,
    t: usize,
    x: &[Elem],
    y: &[Elem],
    map: &AffineMap,
) -> Result<AlternantFold, FoldError> {
    if x.len() != y.len() {
        return Err(CodeError::LengthMismatch(x.len(), y.len()).into());
    }
    let (perm, reps) = full_orbit_representatives(field, x, map)?;
    if y.iter().any(|e| e.is_zero()) {
        return Err(FoldError::IncompatibleMultiplier);
    }
    let alpha = match y.first() {
        Some(&y0) => field.div(y[perm.image(0)], y0).expect("nonzero multiplier"),
        None => Elem::ONE,
    };
    if (0..x.len()).any(|i| y[perm.image(i)] != field.mul(alpha, y[i])) {
        return Err(FoldError::IncompatibleMultiplier);
    }
    let d = map.exponent_of(field, alpha).map_err(|_| FoldError::IncompatibleMultiplier)?;
    let support = folded_support(field, x, &reps, map)?;
    let t = t as i64;
    let ell = map.order() as i64;
    let (degree, exponent, multiplier) = match map.fixed_point() {
        None => {
            let p = field.characteristic() as i64;
            let r = floor_plus_one(t - ell, ell);
            if r != floor_plus_one(t - p, p) {
                return Err(FoldError::Internal("translation order differs from the characteristic"));
            }
            (r, 0, reps.iter().map(|&i| y[i]).collect())
        }
        Some(u0) => {
            let e = (ell - d as i64).rem_euclid(ell) as u64;
            let r = floor_plus_one(t - 1 - e as i64, ell);
            let y2 = reps
                .iter()
                .map(|&i| field.mul(y[i], field.pow(field.sub(x[i], u0), e)))
                .collect();
            (r, e, y2)
        }
    };
    Ok(AlternantFold { degree, support, multiplier, d, exponent, representatives: reps })
}

/// Predicted fold of G(x, Γ)^⊥: the dual of G(x', γ) where Γ = γ(R) for a
/// translation and Γ = (z - u0)^d γ(R) otherwise.
pub fn predict_fold_goppa(field: &Field, x: &[Elem], gamma: &Poly, map: &AffineMap) -> Result<GoppaFold, FoldError> {
    let alpha = solve_alpha(field, gamma, map).ok_or(FoldError::NotInvariant)?;
    let (d, small) = decompose_invariant(field, gamma, map, alpha)?;
    let (_, reps) = full_orbit_representatives(field, x, map)?;
    let support = folded_support(field, x, &reps, map)?;
    Ok(GoppaFold { support, polynomial: small, d, representatives: reps })
}

/// One folding step on a spec; returns the predicted spec and d.
pub fn predict_fold(field: &Field, spec: &CodeSpec, map: &AffineMap) -> Result<(CodeSpec, u64), FoldError> {
    match &spec.kind {
        CodeKind::Alternant { degree, multiplier } => {
            let f = predict_fold_alternant(field, *degree, &spec.support, multiplier, map)?;
            Ok((CodeSpec::alternant(f.support, f.degree, f.multiplier), f.d))
        }
        CodeKind::Goppa { polynomial } => {
            let f = predict_fold_goppa(field, &spec.support, polynomial, map)?;
            Ok((CodeSpec::goppa(f.support, f.polynomial), f.d))
        }
        CodeKind::Grs { .. } => Err(FoldError::UnsupportedKind),
    }
}

/// Folds along every generator in turn. After folding by the shift b the
/// support is pushed through L(z) = z^p - b^(p-1) z, which is additive, so the
/// next shift c becomes L(c). Returns the final spec, the maps actually used,
/// and d of the first step.
pub fn predict_fold_group(
    field: &Field,
    spec: &CodeSpec,
    group: &GroupSpec,
) -> Result<(CodeSpec, Vec<AffineMap>, u64), FoldError> {
    let mut current = spec.clone();
    let mut used: Vec<AffineMap> = Vec::new();
    let mut first_d = 0;
    for (k, g) in group.generators.iter().enumerate() {
        let map = if g.is_translation() {
            let b = used
                .iter()
                .fold(g.b(), |acc, m| invariant_generator(field, m).eval(field, acc));
            AffineMap::shift(field, b)?
        } else {
            *g
        };
        let (next, d) = predict_fold(field, &current, &map)?;
        if k == 0 {
            first_d = d;
        }
        current = next;
        used.push(map);
    }
    Ok((current, used, first_d))
}

/// One-shot fold of the dual code, computed as the dual of the code itself.
pub fn fold_dual(view: &SubfieldView, spec: &CodeSpec, group: &GroupSpec) -> Result<(LinearCode, LinearCode), FoldError> {
    let field = view.field();
    let pg = group.perm_group(field, &spec.support)?;
    let size = pg.order();
    if !pg.orbits().all_of_size(size) {
        return Err(FoldError::ShortOrbit(size as u64));
    }
    let dual = spec.code(view)?.dual();
    let folded = fold_code(&dual, &pg)?;
    Ok((dual, folded))
}

/// Outcome of one verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldReport {
    pub input: CodeSpec,
    pub group: GroupParams,
    pub predicted: CodeSpec,
    /// The fold of the dual equals the dual of the predicted code.
    pub verdict: bool,
    pub n: usize,
    pub k: usize,
    pub n_folded: usize,
    pub k_folded: usize,
    pub dual_dim: usize,
    pub folded_dual_dim: usize,
    pub degree: usize,
    pub folded_degree: usize,
    pub d: u64,
    /// Generator-by-generator folding agrees with the one-shot fold (groups
    /// with more than one generator).
    pub iterated_agrees: Option<bool>,
    /// deg Γ = |G| deg γ for Goppa codes folded along translations.
    pub degree_law: Option<bool>,
    pub micros: Option<u64>,
}

impl FoldReport {
    /// All recorded checks passed.
    pub fn passed(&self) -> bool {
        self.verdict && self.iterated_agrees != Some(false) && self.degree_law != Some(false)
    }
}

/// Compares the directly folded dual against a (possibly externally
/// supplied) prediction.
pub fn prediction_matches(view: &SubfieldView, folded: &LinearCode, predicted: &CodeSpec) -> Result<bool, FoldError> {
    if predicted.len() != folded.len() {
        return Ok(false);
    }
    let pred = match predicted.dual(view) {
        Ok(c) => c,
        Err(_) => return Ok(false),
    };
    Ok(code_equal(folded, &pred)?)
}

pub fn verify_fold(view: &SubfieldView, spec: &CodeSpec, group: &GroupSpec) -> Result<FoldReport, FoldError> {
    let start = Instant::now();
    let field = view.field();
    let (dual, folded) = fold_dual(view, spec, group)?;
    let (predicted, _, d) = predict_fold_group(field, spec, group)?;
    let verdict = prediction_matches(view, &folded, &predicted)?;
    let iterated_agrees = if group.generators.len() > 1 {
        let gens: Vec<Permutation> = group.induced(field, &spec.support)?.into_iter().map(|p| p.perm).collect();
        let (iter, _) = fold_group_iterative(&dual, &gens)?;
        Some(code_equal(&iter, &folded)?)
    } else {
        None
    };
    let degree_law = match (&spec.kind, &predicted.kind) {
        (CodeKind::Goppa { polynomial: big }, CodeKind::Goppa { polynomial: small })
            if group.generators.iter().all(|g| g.is_translation()) =>
        {
            let g = group.order(field) as usize;
            Some(big.degree().unwrap_or(0) == g * small.degree().unwrap_or(0))
        }
        _ => None,
    };
    let n = spec.len();
    let n_folded = folded.len();
    Ok(FoldReport {
        input: spec.clone(),
        group: group.params(),
        verdict,
        n,
        k: n - dual.dim(),
        n_folded,
        k_folded: n_folded - folded.dim(),
        dual_dim: dual.dim(),
        folded_dual_dim: folded.dim(),
        degree: spec.degree(),
        folded_degree: predicted.degree(),
        predicted,
        d,
        iterated_agrees,
        degree_law,
        micros: Some(start.elapsed().as_micros() as u64),
    })
}

/// Fold of a quasi-cyclic alternant dual along one affine map.
pub fn verify_alternant_fold(view: &SubfieldView, spec: &CodeSpec, map: &AffineMap) -> Result<FoldReport, FoldError> {
    if !matches!(spec.kind, CodeKind::Alternant { .. }) {
        return Err(FoldError::UnsupportedKind);
    }
    verify_fold(view, spec, &GroupSpec::cyclic(*map))
}

/// Fold of a Goppa dual along one affine map.
pub fn verify_goppa_fold(view: &SubfieldView, spec: &CodeSpec, map: &AffineMap) -> Result<FoldReport, FoldError> {
    if !matches!(spec.kind, CodeKind::Goppa { .. }) {
        return Err(FoldError::UnsupportedKind);
    }
    verify_fold(view, spec, &GroupSpec::cyclic(*map))
}

/// Fold of a quasi-monoidic Goppa dual along its whole translation group.
pub fn verify_group_goppa_fold(view: &SubfieldView, spec: &CodeSpec, group: &GroupSpec) -> Result<FoldReport, FoldError> {
    if !matches!(spec.kind, CodeKind::Goppa { .. }) {
        return Err(FoldError::UnsupportedKind);
    }
    verify_fold(view, spec, group)
}

/// Folding the code itself (not its dual) along one map lands inside
/// A_r(x', y') with r = ⌊(t - 1 - e)/ℓ⌋ + 1 and the same x', y' as the dual
/// prediction. Returns (inclusion, equality).
pub fn primal_fold_inclusion(view: &SubfieldView, spec: &CodeSpec, map: &AffineMap) -> Result<(bool, bool), FoldError> {
    let field = view.field();
    let y = spec.multiplier(field)?;
    let t = spec.degree();
    let pred = predict_fold_alternant(field, t, &spec.support, &y, map)?;
    let ell = map.order() as i64;
    let r = floor_plus_one(t as i64 - 1 - pred.exponent as i64, ell);
    let target = crate::code::alternant_code(r, &pred.support, &pred.multiplier, view)?;
    let pg = GroupSpec::cyclic(*map).perm_group(field, &spec.support)?;
    let folded = fold_code(&spec.code(view)?, &pg)?;
    Ok((folded.is_subcode_of(&target), code_equal(&folded, &target)?))
}

/// Ways of perturbing a predicted spec for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corruption {
    /// Multiply one multiplier entry by an element outside GF(q).
    Multiplier,
    /// Replace one support entry by an unused field element (degree >= 2).
    Support,
    /// Raise the degree by one.
    DegreeUp,
    /// Lower the degree by one.
    DegreeDown,
    /// Add a random lower-order term to the Goppa polynomial.
    Polynomial,
}

impl Corruption {
    pub const ALL: [Corruption; 5] =
        [Corruption::Multiplier, Corruption::Support, Corruption::DegreeUp, Corruption::DegreeDown, Corruption::Polynomial];
}

/// A perturbed copy of the spec, or None when the corruption does not apply:
/// a degree change on a Goppa spec, GF(q) = GF(q^m), a support change at
/// degree below 2 (the support then does not enter the code), or a code with
/// no nonzero coordinate. Only coordinates where the code is not identically
/// zero are perturbed.
pub fn corrupt_spec(view: &SubfieldView, spec: &CodeSpec, kind: Corruption, seed: u64) -> Option<CodeSpec> {
    let field = view.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.len();
    if n == 0 {
        return None;
    }
    // coordinates on which some codeword of the predicted code is nonzero;
    // elsewhere neither x_j nor y_j enters the code
    let gen = spec.code(view).ok()?;
    let active: Vec<usize> = (0..n).filter(|&c| gen.generator().row_iter().any(|r| !r[c].is_zero())).collect();
    if active.is_empty() {
        return None;
    }
    let j = active[rng.random_range(0..active.len())];
    let mut out = spec.clone();
    match (kind, &mut out.kind) {
        (Corruption::Multiplier, CodeKind::Alternant { multiplier, .. }) => {
            let outside: Vec<Elem> = field.nonzero_elements().filter(|&c| !view.contains(c)).collect();
            if outside.is_empty() {
                return None;
            }
            let c = outside[rng.random_range(0..outside.len())];
            multiplier[j] = field.mul(multiplier[j], c);
        }
        (Corruption::Multiplier, CodeKind::Goppa { polynomial }) => {
            // make the multiplier explicit, then perturb it
            let mut y = crate::code::goppa_multiplier(field, &out.support, polynomial).ok()?;
            let outside: Vec<Elem> = field.nonzero_elements().filter(|&c| !view.contains(c)).collect();
            if outside.is_empty() {
                return None;
            }
            y[j] = field.mul(y[j], outside[rng.random_range(0..outside.len())]);
            let degree = polynomial.degree().unwrap_or(0);
            out = CodeSpec::alternant(out.support.clone(), degree, y);
        }
        (Corruption::Support, _) if spec.degree() >= 2 => {
            let used: std::collections::HashSet<Elem> = out.support.iter().copied().collect();
            let free: Vec<Elem> = field
                .elements()
                .filter(|e| !used.contains(e))
                .filter(|&e| match &out.kind {
                    CodeKind::Goppa { polynomial } => !polynomial.eval(field, e).is_zero(),
                    _ => true,
                })
                .collect();
            if free.is_empty() {
                return None;
            }
            out.support[j] = free[rng.random_range(0..free.len())];
        }
        (Corruption::DegreeUp, CodeKind::Alternant { degree, .. }) => *degree += 1,
        (Corruption::DegreeDown, CodeKind::Alternant { degree, .. }) => {
            *degree = degree.checked_sub(1)?;
        }
        (Corruption::Polynomial, CodeKind::Goppa { polynomial }) => {
            let deg = polynomial.degree()?;
            for _ in 0..64 {
                let k = rng.random_range(0..deg.max(1));
                let c = Elem(rng.random_range(1..field.size()));
                let cand = polynomial.add(field, &Poly::monomial(c, k));
                if cand.degree() == Some(deg) && out.support.iter().all(|&x| !cand.eval(field, x).is_zero()) {
                    *polynomial = cand;
                    return Some(out);
                }
            }
            return None;
        }
        _ => return None,
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::alternant_dual;
    use crate::symmetry::build_qc_instance;

    fn gf4() -> Field {
        Field::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn fold_small_examples() {
        let f = Field::prime(3).unwrap();
        let c = LinearCode::from_rows(&f, 4, &[vec![Elem(1), Elem(1), Elem(0), Elem(0)]]);
        let swap = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        let folded = fold_code(&c, &PermGroup::cyclic(&swap)).unwrap();
        assert_eq!(folded, LinearCode::from_rows(&f, 2, &[vec![Elem(2), Elem(0)]]));
        // characteristic 2: constant on orbits folds to zero
        let f2 = Field::prime(2).unwrap();
        let c = LinearCode::from_rows(&f2, 4, &[vec![Elem(1), Elem(1), Elem(0), Elem(0)]]);
        assert_eq!(fold_code(&c, &PermGroup::cyclic(&swap)).unwrap().dim(), 0);
        assert_eq!(fold_code(&c, &PermGroup::trivial(4)).unwrap(), c);
        assert!(matches!(
            fold_code(&c, &PermGroup::trivial(3)),
            Err(FoldError::PartitionMismatch { expected: 3, actual: 4 })
        ));
    }

    #[test]
    fn gf4_translation_prediction() {
        let f = gf4();
        let view = SubfieldView::new(&f, 1).unwrap();
        let w = f.z();
        let w2 = f.mul(w, w);
        let x = vec![Elem(0), Elem(1), w, w2];
        let y = vec![Elem(3); 4];
        let map = AffineMap::shift(&f, Elem::ONE).unwrap();
        let pred = predict_fold_alternant(&f, 2, &x, &y, &map).unwrap();
        assert_eq!(pred.degree, 1);
        assert_eq!(pred.support, vec![Elem(0), Elem(1)]);
        assert_eq!(pred.multiplier, vec![y[0], y[2]]);
        let spec = CodeSpec::alternant(x, 2, y);
        assert!(verify_alternant_fold(&view, &spec, &map).unwrap().verdict);
    }

    #[test]
    fn constant_term_survives_when_d_is_zero() {
        // GF(4), z -> ωz, d = 0, t = 1: folding the dual of A_1 keeps the
        // trace of constants, so the folded dual is not zero.
        let f = gf4();
        let view = SubfieldView::new(&f, 1).unwrap();
        let w = f.z();
        let map = AffineMap::new(&f, w, Elem::ZERO).unwrap();
        let (spec, _) = build_qc_instance(&f, &map, 1, 1, 0, 3).unwrap();
        let group = GroupSpec::cyclic(map);
        let (_, folded) = fold_dual(&view, &spec, &group).unwrap();
        let CodeKind::Alternant { multiplier, .. } = &spec.kind else { unreachable!() };
        let pred = predict_fold_alternant(&f, 1, &spec.support, multiplier, &map).unwrap();
        assert_eq!((pred.degree, pred.exponent), (1, 0));
        assert!(folded.dim() > 0);
        assert!(verify_alternant_fold(&view, &spec, &map).unwrap().verdict);
    }

    #[test]
    fn degenerate_translation_degree() {
        let f = Field::new(2, 4, None).unwrap();
        let view = SubfieldView::new(&f, 1).unwrap();
        let map = AffineMap::shift(&f, Elem(3)).unwrap();
        let (spec, _) = build_qc_instance(&f, &map, 4, 1, 0, 11).unwrap();
        let report = verify_alternant_fold(&view, &spec, &map).unwrap();
        assert_eq!(report.folded_degree, 0);
        assert_eq!(report.folded_dual_dim, 0);
        assert!(report.verdict);
    }

    #[test]
    fn lift_trivial_subgroup_is_identity_lift() {
        let sigma = Permutation::new(vec![2, 0, 1, 3]).unwrap();
        let orbits = orbit_partition(4, &[]).unwrap();
        let lifted = lift_permutation(&sigma, &orbits, &[]).unwrap();
        assert_eq!(lifted.perm, sigma);
        let tau = Permutation::new(vec![1, 0, 2, 3]).unwrap();
        let orbits = orbit_partition(4, std::slice::from_ref(&tau)).unwrap();
        assert_eq!(lift_permutation(&sigma, &orbits, &[tau]), Err(FoldError::NotCommuting));
    }

    #[test]
    fn sigma_subcode_matches_fold_dimension() {
        let f = Field::new(2, 4, None).unwrap();
        let view = SubfieldView::new(&f, 1).unwrap();
        let a = f.element_of_order(3).unwrap();
        let map = AffineMap::new(&f, a, Elem(5)).unwrap();
        for seed in 0..10 {
            let (spec, ip) = build_qc_instance(&f, &map, 4, 3, seed % 3, seed).unwrap();
            let dual = spec.code(&view).unwrap().dual();
            let sub = sigma_subcode(&dual, &ip.perm);
            assert!(sub.is_subcode_of(&dual));
            assert_eq!(sub.dim(), fold_code(&dual, &PermGroup::cyclic(&ip.perm)).unwrap().dim());
        }
    }

    #[test]
    fn prediction_rejects_fixed_point_and_bad_multiplier() {
        let f = gf4();
        let w = f.z();
        let map = AffineMap::new(&f, w, Elem::ZERO).unwrap();
        let x = vec![Elem(0), Elem(1), w, f.mul(w, w)];
        assert_eq!(
            predict_fold_alternant(&f, 2, &x, &[Elem(1); 4], &map),
            Err(FoldError::FixedPointInSupport)
        );
        let x = vec![Elem(1), w, f.mul(w, w)];
        assert_eq!(
            predict_fold_alternant(&f, 2, &x, &[Elem(1), Elem(1), Elem(2)], &map),
            Err(FoldError::IncompatibleMultiplier)
        );
    }

    #[test]
    fn corrupted_multiplier_changes_the_dual() {
        let f = Field::new(2, 4, None).unwrap();
        let view = SubfieldView::new(&f, 1).unwrap();
        let a = f.element_of_order(3).unwrap();
        let map = AffineMap::new(&f, a, Elem::ZERO).unwrap();
        let (spec, _) = build_qc_instance(&f, &map, 5, 3, 0, 5).unwrap();
        let report = verify_alternant_fold(&view, &spec, &map).unwrap();
        assert!(report.verdict);
        assert!(report.folded_dual_dim > 0 && report.folded_dual_dim < report.n_folded);
        let bad = corrupt_spec(&view, &report.predicted, Corruption::Multiplier, 1).unwrap();
        let CodeKind::Alternant { degree, multiplier } = &bad.kind else { unreachable!() };
        let good = report.predicted.dual(&view).unwrap();
        let worse = alternant_dual(*degree, &bad.support, multiplier, &view).unwrap();
        assert_ne!(good, worse);
    }
}
