//! Supports, multipliers and Goppa polynomials with affine-induced
//! automorphisms: cyclic groups generated by one affine map, and elementary
//! abelian groups of translations (quasi-dyadic / quasi-monoidic).

use std::collections::{HashSet, VecDeque};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{code_equal, permute_code, permute_vector, CodeError, CodeSpec, LinearCode};
use crate::field::{Elem, Field, FieldError, SubfieldView};
use crate::invariant::{build_invariant_poly, AffineMap, InvariantError};
use crate::matrix::Matrix;
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("support is not invariant: image of position {0} is not in the support")]
    NotInvariant(usize),
    #[error("requested {wanted} orbits but only {available} are available")]
    NotEnoughOrbits { wanted: usize, available: usize },
    #[error("translation elements are not linearly independent over GF(p)")]
    DependentShifts,
    #[error("coset seeds {0} and {1} lie in the same coset")]
    CosetCollision(usize, usize),
    #[error("permutations act on different numbers of points")]
    DegreeMismatch,
    #[error("strict coset multipliers need {wanted} distinct nonzero values, field has {available}")]
    NotEnoughMultipliers { wanted: usize, available: usize },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A permutation of {0, ..., n-1}, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    pub fn new(images: Vec<usize>) -> Option<Permutation> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// self ∘ other, i.e. i -> self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn pow(&self, k: u64) -> Permutation {
        (0..k).fold(Permutation::identity(self.len()), |acc, _| self.compose(&acc))
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.len()];
        let mut ord = 1u64;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The permutation of code positions induced by an affine map on a support:
/// x_{σ(i)} = a x_i + b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedPermutation {
    pub perm: Permutation,
    pub order: u64,
    pub map: AffineMap,
}

impl InducedPermutation {
    /// Whether the map's fixed point is one of the support positions.
    pub fn fixes_a_position(&self) -> bool {
        (0..self.perm.len()).any(|i| self.perm.image(i) == i)
    }
}

pub fn induced_permutation(field: &Field, x: &[Elem], map: &AffineMap) -> Result<InducedPermutation, SymmetryError> {
    let mut position = vec![usize::MAX; field.size() as usize];
    for (i, &xi) in x.iter().enumerate() {
        position[xi.0 as usize] = i;
    }
    let images = x
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            let j = position[map.apply(field, xi).0 as usize];
            if j == usize::MAX {
                Err(SymmetryError::NotInvariant(i))
            } else {
                Ok(j)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let perm = Permutation::new(images).ok_or(SymmetryError::NotInvariant(0))?;
    let order = perm.order();
    Ok(InducedPermutation { perm, order, map: *map })
}

/// Orbits of a permutation group on {0, ..., n-1}. Each orbit is sorted and
/// orbits are ordered by their smallest element, which is the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    orbits: Vec<Vec<usize>>,
    owner: Vec<usize>,
}

impl OrbitPartition {
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.owner.len()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    /// Index of the orbit containing position i.
    pub fn orbit_of(&self, i: usize) -> usize {
        self.owner[i]
    }

    pub fn all_of_size(&self, size: usize) -> bool {
        self.orbits.iter().all(|o| o.len() == size)
    }
}

pub fn orbit_partition(n: usize, perms: &[Permutation]) -> Result<OrbitPartition, SymmetryError> {
    if perms.iter().any(|p| p.len() != n) {
        return Err(SymmetryError::DegreeMismatch);
    }
    let mut owner = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if owner[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        owner[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for p in perms {
                let j = p.image(i);
                if owner[j] == usize::MAX {
                    owner[j] = id;
                    orbit.push(j);
                    queue.push_back(j);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(OrbitPartition { orbits, owner })
}

/// A finite permutation group with its full element list.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    orbits: OrbitPartition,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup, SymmetryError> {
        let orbits = orbit_partition(degree, &generators)?;
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    elements.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(PermGroup { degree, generators, elements, orbits })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::generate(degree, Vec::new()).expect("no generators")
    }

    pub fn cyclic(perm: &Permutation) -> PermGroup {
        PermGroup::generate(perm.len(), vec![perm.clone()]).expect("single generator")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn orbits(&self) -> &OrbitPartition {
        &self.orbits
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupStructure {
    Cyclic,
    ElementaryAbelian,
}

/// Serializable description of a group: one affine map z -> az + b, or the
/// translations by the GF(p)-span of a list of shifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupParams {
    Qc { a: Elem, b: Elem },
    Qm { shifts: Vec<Elem> },
}

impl GroupParams {
    pub fn spec(&self, field: &Field) -> Result<GroupSpec, SymmetryError> {
        match self {
            GroupParams::Qc { a, b } => Ok(GroupSpec::cyclic(AffineMap::new(field, *a, *b)?)),
            GroupParams::Qm { shifts } => GroupSpec::translations(field, shifts),
        }
    }
}

/// Affine generators of an automorphism group, tagged with its structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub generators: Vec<AffineMap>,
    pub structure: GroupStructure,
}

impl GroupSpec {
    pub fn cyclic(map: AffineMap) -> GroupSpec {
        GroupSpec { generators: vec![map], structure: GroupStructure::Cyclic }
    }

    /// The group of translations by the GF(p)-span of `shifts`.
    pub fn translations(field: &Field, shifts: &[Elem]) -> Result<GroupSpec, SymmetryError> {
        if !fp_independent(field, shifts) {
            return Err(SymmetryError::DependentShifts);
        }
        let generators = shifts
            .iter()
            .map(|&b| AffineMap::shift(field, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupSpec { generators, structure: GroupStructure::ElementaryAbelian })
    }

    pub fn params(&self) -> GroupParams {
        match self.structure {
            GroupStructure::Cyclic => GroupParams::Qc { a: self.generators[0].a(), b: self.generators[0].b() },
            GroupStructure::ElementaryAbelian => GroupParams::Qm { shifts: self.shifts() },
        }
    }

    /// λ for translation groups, 1 for cyclic groups.
    pub fn lambda(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self, field: &Field) -> u64 {
        match self.structure {
            GroupStructure::Cyclic => self.generators[0].order(),
            GroupStructure::ElementaryAbelian => (field.characteristic() as u64).pow(self.generators.len() as u32),
        }
    }

    pub fn shifts(&self) -> Vec<Elem> {
        self.generators.iter().map(|g| g.b()).collect()
    }

    pub fn induced(&self, field: &Field, x: &[Elem]) -> Result<Vec<InducedPermutation>, SymmetryError> {
        self.generators.iter().map(|g| induced_permutation(field, x, g)).collect()
    }

    pub fn perm_group(&self, field: &Field, x: &[Elem]) -> Result<PermGroup, SymmetryError> {
        let gens = self.induced(field, x)?.into_iter().map(|p| p.perm).collect();
        PermGroup::generate(x.len(), gens)
    }
}

/// GF(p)-linear independence of field elements, via the rank of their digit vectors.
pub fn fp_independent(field: &Field, elems: &[Elem]) -> bool {
    let m = field.degree() as usize;
    let rows: Vec<Vec<Elem>> = elems.iter().map(|&e| field.digits(e).into_iter().map(Elem).collect()).collect();
    let prime = Field::prime(field.characteristic()).expect("characteristic is prime");
    elems.iter().all(|e| !e.is_zero()) && Matrix::from_rows(&prime, m, &rows).rank() == elems.len()
}

/// The additive group spanned over GF(p), listed in Eq.-(2) order: element i
/// is Σ_j i_j α_j where i_j are the base-p digits of i.
pub fn span_elements(field: &Field, shifts: &[Elem]) -> Vec<Elem> {
    let p = field.characteristic() as u64;
    let count = p.pow(shifts.len() as u32);
    (0..count)
        .map(|mut i| {
            let mut acc = Elem::ZERO;
            for &a in shifts {
                let digit = (i % p) as i64;
                i /= p;
                acc = field.add(acc, field.mul(field.from_int(digit), a));
            }
            acc
        })
        .collect()
}

/// All orbits of the map on the field minus its fixed point. Each orbit is
/// listed as (u, σ(u), σ²(u), ...) starting from its smallest element.
pub fn orbits_of_map(field: &Field, map: &AffineMap) -> Vec<Vec<Elem>> {
    let mut seen = vec![false; field.size() as usize];
    if let Some(z0) = map.fixed_point() {
        seen[z0.0 as usize] = true;
    }
    let mut out = Vec::new();
    for u in field.elements() {
        if seen[u.0 as usize] {
            continue;
        }
        let mut orbit = Vec::with_capacity(map.order() as usize);
        let mut v = u;
        while !seen[v.0 as usize] {
            seen[v.0 as usize] = true;
            orbit.push(v);
            v = map.apply(field, v);
        }
        out.push(orbit);
    }
    out
}

/// Canonical representative (smallest element) of the coset u + G.
fn coset_key(field: &Field, u: Elem, group: &[Elem]) -> Elem {
    group.iter().map(|&g| field.add(u, g)).min().expect("group contains zero")
}

fn random_nonzero(field: &Field, rng: &mut ChaCha8Rng) -> Elem {
    Elem(rng.random_range(1..field.size()))
}

fn pick_orbits<T: Clone>(pool: &[T], n0: usize, rng: &mut ChaCha8Rng) -> Result<Vec<T>, SymmetryError> {
    if n0 > pool.len() {
        return Err(SymmetryError::NotEnoughOrbits { wanted: n0, available: pool.len() });
    }
    let mut picks = index::sample(rng, pool.len(), n0).into_vec();
    picks.sort_unstable();
    Ok(picks.into_iter().map(|i| pool[i].clone()).collect())
}

/// A quasi-cyclic alternant code: n0 full orbits of the map (fixed point
/// excluded) and a multiplier with y_{σ(i)} = a^d y_i.
pub fn build_qc_instance(
    field: &Field,
    map: &AffineMap,
    n0: usize,
    t: usize,
    d: u64,
    seed: u64,
) -> Result<(CodeSpec, InducedPermutation), SymmetryError> {
    let alpha = map.alpha_for(field, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orbits = pick_orbits(&orbits_of_map(field, map), n0, &mut rng)?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for orbit in &orbits {
        let mut v = random_nonzero(field, &mut rng);
        for &u in orbit {
            x.push(u);
            y.push(v);
            v = field.mul(v, alpha);
        }
    }
    let perm = induced_permutation(field, &x, map)?;
    Ok((CodeSpec::alternant(x, t, y), perm))
}

/// A quasi-cyclic Goppa code with Γ = build_invariant_poly(Q, σ, d); only
/// orbits on which Γ does not vanish are eligible.
pub fn build_qc_goppa(
    field: &Field,
    map: &AffineMap,
    n0: usize,
    q: &Poly,
    d: u64,
    seed: u64,
) -> Result<(CodeSpec, InducedPermutation), SymmetryError> {
    let gamma = build_invariant_poly(field, q, map, d)?;
    if gamma.is_zero() {
        return Err(CodeError::ZeroGoppa.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eligible: Vec<Vec<Elem>> = orbits_of_map(field, map)
        .into_iter()
        .filter(|o| o.iter().all(|&u| !gamma.eval(field, u).is_zero()))
        .collect();
    let orbits = pick_orbits(&eligible, n0, &mut rng)?;
    let x: Vec<Elem> = orbits.concat();
    let perm = induced_permutation(field, &x, map)?;
    Ok((CodeSpec::goppa(x, gamma), perm))
}

/// Support laid out in contiguous cosets of G = span(α_j):
/// x_i = x_{⌊i/p^λ⌋p^λ} + Σ_j i_j α_j.
pub fn build_qm_support(field: &Field, shifts: &[Elem], seeds: &[Elem]) -> Result<Vec<Elem>, SymmetryError> {
    if !fp_independent(field, shifts) {
        return Err(SymmetryError::DependentShifts);
    }
    let group = span_elements(field, shifts);
    let keys: Vec<Elem> = seeds.iter().map(|&s| coset_key(field, s, &group)).collect();
    for i in 0..keys.len() {
        if let Some(j) = (0..i).find(|&j| keys[j] == keys[i]) {
            return Err(SymmetryError::CosetCollision(j, i));
        }
    }
    Ok(seeds
        .iter()
        .flat_map(|&s| group.iter().map(move |&g| (s, g)))
        .map(|(s, g)| field.add(s, g))
        .collect())
}

fn coset_representatives(field: &Field, group: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; field.size() as usize];
    let mut reps = Vec::new();
    for u in field.elements() {
        if seen[u.0 as usize] {
            continue;
        }
        reps.push(u);
        for &g in group {
            seen[field.add(u, g).0 as usize] = true;
        }
    }
    reps
}

/// Random seeds in n0 distinct cosets accepted by `keep`; each seed is a
/// random member of its coset.
fn random_coset_seeds(
    field: &Field,
    group: &[Elem],
    n0: usize,
    rng: &mut ChaCha8Rng,
    keep: impl Fn(Elem) -> bool,
) -> Result<Vec<Elem>, SymmetryError> {
    let eligible: Vec<Elem> = coset_representatives(field, group).into_iter().filter(|&u| keep(u)).collect();
    let reps = pick_orbits(&eligible, n0, rng)?;
    Ok(reps
        .into_iter()
        .map(|u| field.add(u, group[rng.random_range(0..group.len())]))
        .collect())
}

/// Quasi-monoidic (quasi-dyadic for p = 2) alternant code of degree t whose
/// multiplier is constant on cosets of G. With `strict`, distinct cosets get
/// distinct multiplier values.
pub fn build_qm_alternant(
    field: &Field,
    shifts: &[Elem],
    n0: usize,
    t: usize,
    seed: u64,
    strict: bool,
) -> Result<(CodeSpec, GroupSpec), SymmetryError> {
    let spec = GroupSpec::translations(field, shifts)?;
    let group = span_elements(field, shifts);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds = random_coset_seeds(field, &group, n0, &mut rng, |_| true)?;
    let x = build_qm_support(field, shifts, &seeds)?;
    let values: Vec<Elem> = if strict {
        let available = field.size() as usize - 1;
        if n0 > available {
            return Err(SymmetryError::NotEnoughMultipliers { wanted: n0, available });
        }
        index::sample(&mut rng, available, n0).into_iter().map(|i| Elem(i as u32 + 1)).collect()
    } else {
        (0..n0).map(|_| random_nonzero(field, &mut rng)).collect()
    };
    let y: Vec<Elem> = values.iter().flat_map(|&v| std::iter::repeat_n(v, group.len())).collect();
    Ok((CodeSpec::alternant(x, t, y), spec))
}

/// Quasi-monoidic Goppa code with Γ(z) = Q(Π_{g∈G}(z - g)), of degree p^λ deg Q.
pub fn build_qm_goppa(
    field: &Field,
    shifts: &[Elem],
    n0: usize,
    q: &Poly,
    seed: u64,
) -> Result<(CodeSpec, GroupSpec), SymmetryError> {
    let spec = GroupSpec::translations(field, shifts)?;
    let group = span_elements(field, shifts);
    let annihilator = group
        .iter()
        .fold(Poly::one(), |acc, &g| acc.mul(field, &Poly::linear_root(field, g)));
    let gamma = q.compose(field, &annihilator);
    if gamma.is_zero() {
        return Err(CodeError::ZeroGoppa.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds = random_coset_seeds(field, &group, n0, &mut rng, |u| !gamma.eval(field, u).is_zero())?;
    let x = build_qm_support(field, shifts, &seeds)?;
    Ok((CodeSpec::goppa(x, gamma), spec))
}

/// σ is a permutation automorphism of C.
pub fn check_automorphism(code: &LinearCode, perm: &Permutation) -> bool {
    match permute_code(code, perm.as_slice()) {
        Ok(img) => code_equal(&img, code).unwrap_or(false),
        Err(_) => false,
    }
}

/// The row set is mapped onto itself by every group element.
pub fn row_set_closed(gen: &Matrix, group: &PermGroup) -> bool {
    let rows: HashSet<Vec<Elem>> = gen.row_iter().map(|r| r.to_vec()).collect();
    group
        .generators()
        .iter()
        .all(|g| gen.row_iter().all(|r| rows.contains(&permute_vector(r, g.as_slice()))))
}

/// Searches for a generator matrix of C whose rows fall into full-size
/// orbits under the group: random codewords are accepted when their whole
/// orbit is new and independent of the rows collected so far.
pub fn symmetric_generator(code: &LinearCode, group: &PermGroup, seed: u64, attempts: usize) -> Option<Matrix> {
    let f = code.field();
    let n = code.len();
    let g = group.order();
    if !code.dim().is_multiple_of(g) || group.degree() != n {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let mut rank = 0usize;
    let mut tries = 0;
    while rank < code.dim() {
        if tries == attempts {
            return None;
        }
        tries += 1;
        let mut word = vec![Elem::ZERO; n];
        for r in code.generator().row_iter() {
            let c = Elem(rng.random_range(0..f.size()));
            f.sub_scaled_row(&mut word, r, f.neg(c));
        }
        let orbit: Vec<Vec<Elem>> = group.elements().iter().map(|s| permute_vector(&word, s.as_slice())).collect();
        let mut candidate = rows.clone();
        candidate.extend(orbit.iter().cloned());
        let new_rank = Matrix::from_rows(f, n, &candidate).rank();
        if new_rank == rank + g {
            rows = candidate;
            rank = new_rank;
        }
    }
    Some(Matrix::from_rows(f, n, &rows))
}

/// Convenience: the GF(q) view and its field for a given base-field degree.
pub fn view_for(field: &Field, s: u32) -> Result<SubfieldView, SymmetryError> {
    Ok(SubfieldView::new(field, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::alternant_code;

    fn gf4() -> Field {
        Field::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn induced_permutation_examples() {
        let f = gf4();
        let shift = AffineMap::shift(&f, Elem::ONE).unwrap();
        let ip = induced_permutation(&f, &[Elem(0), Elem(1)], &shift).unwrap();
        assert_eq!(ip.perm.as_slice(), &[1, 0]);
        let w = f.z();
        let w2 = f.mul(w, w);
        let rot = AffineMap::new(&f, w, Elem::ZERO).unwrap();
        assert_eq!(induced_permutation(&f, &[w, w2], &rot), Err(SymmetryError::NotInvariant(1)));
        // containing the fixed point 0
        let ip = induced_permutation(&f, &[Elem(0), Elem(1), w, w2], &rot).unwrap();
        assert!(ip.fixes_a_position());
        let orbits = orbit_partition(4, std::slice::from_ref(&ip.perm)).unwrap();
        assert_eq!(orbits.orbits()[0], vec![0]);
    }

    #[test]
    fn orbit_partition_examples() {
        let id = Permutation::identity(5);
        assert_eq!(orbit_partition(5, &[id]).unwrap().len(), 5);
        let a = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        let b = Permutation::new(vec![2, 3, 0, 1]).unwrap();
        let part = orbit_partition(4, &[a, b]).unwrap();
        assert_eq!(part.orbits(), &[vec![0, 1, 2, 3]]);
        assert_eq!(orbit_partition(3, &[Permutation::identity(4)]), Err(SymmetryError::DegreeMismatch));
    }

    #[test]
    fn qm_support_layout() {
        let f = gf4();
        let w = f.z();
        let x = build_qm_support(&f, &[Elem::ONE], &[Elem(0), w]).unwrap();
        assert_eq!(x, vec![Elem(0), Elem(1), w, f.add(w, Elem::ONE)]);
        assert_eq!(
            build_qm_support(&f, &[Elem::ONE], &[Elem(0), Elem(1)]),
            Err(SymmetryError::CosetCollision(0, 1))
        );
        let g8 = Field::new(2, 3, None).unwrap();
        assert_eq!(
            build_qm_support(&g8, &[Elem(1), Elem(2), Elem(3)], &[Elem(0)]),
            Err(SymmetryError::DependentShifts)
        );
    }

    #[test]
    fn qc_instance_is_symmetric() {
        let f = Field::new(2, 4, None).unwrap();
        let view = SubfieldView::new(&f, 1).unwrap();
        let a = f.element_of_order(5).unwrap();
        let map = AffineMap::new(&f, a, Elem::ZERO).unwrap();
        let (spec, perm) = build_qc_instance(&f, &map, 3, 2, 0, 7).unwrap();
        assert_eq!(spec.len(), 15);
        assert!(check_automorphism(&spec.code(&view).unwrap(), &perm.perm));
        let (spec, perm) = build_qc_instance(&f, &map, 2, 3, 1, 8).unwrap();
        let y = spec.multiplier(&f).unwrap();
        for i in 0..spec.len() {
            assert_eq!(y[perm.perm.image(i)], f.mul(a, y[i]));
        }
        assert!(check_automorphism(&spec.code(&view).unwrap(), &perm.perm));
        assert!(matches!(
            build_qc_instance(&f, &map, 4, 2, 0, 1),
            Err(SymmetryError::NotEnoughOrbits { wanted: 4, available: 3 })
        ));
    }

    #[test]
    fn random_transposition_is_rarely_an_automorphism() {
        let f = Field::new(2, 4, None).unwrap();
        let view = SubfieldView::new(&f, 1).unwrap();
        let x: Vec<Elem> = (1..13).map(Elem).collect();
        let y: Vec<Elem> = (0..12).map(|i| Elem(1 + (i * 7) % 15)).collect();
        let c = alternant_code(2, &x, &y, &view).unwrap();
        let mut perm: Vec<usize> = (0..12).collect();
        perm.swap(0, 5);
        assert!(!check_automorphism(&c, &Permutation::new(perm).unwrap()));
        assert!(check_automorphism(&c, &Permutation::identity(12)));
    }
}
