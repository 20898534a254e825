//! Basis systems, the Maximality Property, heights, evenness and the
//! exhaustive census of small Lagrangian matroids.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ground::{enumerate_orderings, set_ranks, AdmissibleSet, GaleOrder, SignedPermutation, Transversal};

/// Largest ground size for [`enumerate_lagrangian_matroids`].
pub const CENSUS_GUARD: usize = 4;

/// A non-empty collection of admissible k-subsets of `J`, sorted by label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisSystem {
    n: usize,
    rank: usize,
    bases: Vec<AdmissibleSet>,
}

impl BasisSystem {
    pub fn new(n: usize, rank: usize, bases: impl IntoIterator<Item = AdmissibleSet>) -> Result<Self> {
        if rank > n {
            return Err(Error::Dimension(format!("rank {rank} exceeds n = {n}")));
        }
        let mut bases: Vec<AdmissibleSet> = bases.into_iter().collect();
        if bases.is_empty() {
            return Err(Error::EmptyBasisSystem);
        }
        for b in &bases {
            if b.n() != n {
                return Err(Error::Dimension(format!("basis {b} has ground size {}", b.n())));
            }
            if b.len() != rank {
                return Err(Error::Dimension(format!("basis {b} does not have size {rank}")));
            }
        }
        bases.sort();
        bases.dedup();
        Ok(BasisSystem { n, rank, bases })
    }

    pub fn from_transversals(n: usize, bases: impl IntoIterator<Item = Transversal>) -> Result<Self> {
        Self::new(n, n, bases.into_iter().map(|t| t.to_set()))
    }

    /// Parses whitespace-separated basis notation; `n` is inferred from the
    /// first basis.
    pub fn parse_lagrangian(text: &str) -> Result<Self> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let first = toks.first().ok_or_else(|| Error::Parse("no bases given".into()))?;
        let n = Transversal::parse_inferred(first)?.n();
        let ts = toks
            .iter()
            .map(|t| Transversal::parse(t, n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_transversals(n, ts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[AdmissibleSet] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn is_lagrangian_rank(&self) -> bool {
        self.rank == self.n
    }

    /// Bases as transversals, in label order. Fails unless rank = n.
    pub fn transversals(&self) -> Result<Vec<Transversal>> {
        if !self.is_lagrangian_rank() {
            return Err(Error::NotLagrangian {
                rank: self.rank,
                n: self.n,
            });
        }
        let mut ts: Vec<Transversal> = self
            .bases
            .iter()
            .map(|b| b.to_transversal().expect("rank n sets are transversals"))
            .collect();
        ts.sort();
        Ok(ts)
    }

    pub fn labels(&self) -> Vec<String> {
        match self.transversals() {
            Ok(ts) => ts.iter().map(Transversal::label).collect(),
            Err(_) => self.bases.iter().map(AdmissibleSet::label).collect(),
        }
    }
}

/// Result of [`check_maximality`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub holds: bool,
    /// First ordering (in enumeration order) without a unique maximum.
    pub witness: Option<SignedPermutation>,
}

/// Index of the `w`-maximal basis, if one dominates all others.
fn gale_maximum(table: &[usize], ranks_cache: &mut Vec<Vec<usize>>, bases: &[AdmissibleSet]) -> Option<usize> {
    ranks_cache.clear();
    ranks_cache.extend(bases.iter().map(|b| set_ranks(table, b)));
    let k = ranks_cache[0].len();
    let top: Vec<usize> = (0..k)
        .map(|i| ranks_cache.iter().map(|r| r[i]).max().unwrap())
        .collect();
    ranks_cache.iter().position(|r| *r == top)
}

/// Checks the Maximality Property by scanning every signed permutation.
pub fn check_maximality(system: &BasisSystem) -> Result<MaximalityReport> {
    let mut cache = Vec::new();
    for w in enumerate_orderings(system.n())? {
        let table = w.rank_table();
        if gale_maximum(&table, &mut cache, system.bases()).is_none() {
            return Ok(MaximalityReport {
                holds: false,
                witness: Some(w),
            });
        }
    }
    Ok(MaximalityReport {
        holds: true,
        witness: None,
    })
}

/// The `w`-maximal basis of a system, if it exists.
pub fn maximal_basis(system: &BasisSystem, w: &SignedPermutation) -> Option<AdmissibleSet> {
    let table = w.rank_table();
    let mut cache = Vec::new();
    gale_maximum(&table, &mut cache, system.bases()).map(|i| system.bases()[i])
}

/// Number of bases dominating every basis under `w` (0 or 1 for a
/// matroid; used to assert uniqueness).
pub fn count_maxima(system: &BasisSystem, w: &SignedPermutation) -> Result<usize> {
    let mut count = 0;
    for a in system.bases() {
        let mut dominates = true;
        for b in system.bases() {
            match crate::ground::compare_sets(w, b, a)? {
                GaleOrder::Less | GaleOrder::Equal => {}
                _ => {
                    dominates = false;
                    break;
                }
            }
        }
        if dominates {
            count += 1;
        }
    }
    Ok(count)
}

/// `h(A) = n - |A ∩ F|`.
pub fn height(a: &Transversal, fundamental: &Transversal) -> usize {
    a.n() - a.overlap(fundamental)
}

/// True iff every basis has the same parity of starred elements.
pub fn is_even(system: &BasisSystem) -> Result<bool> {
    let ts = system.transversals()?;
    let parity = ts[0].starred_count() % 2;
    Ok(ts.iter().all(|t| t.starred_count() % 2 == parity))
}

/// A Lagrangian matroid: rank n, Maximality verified at construction.
/// Bases are kept in label order.
#[derive(Clone, Debug)]
pub struct LagrangianMatroid {
    n: usize,
    bases: Vec<Transversal>,
    position: HashMap<Transversal, usize>,
}

impl PartialEq for LagrangianMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for LagrangianMatroid {}

impl LagrangianMatroid {
    pub fn new(system: &BasisSystem) -> Result<Self> {
        let bases = system.transversals()?;
        let report = check_maximality(system)?;
        if let Some(w) = report.witness {
            return Err(Error::MaximalityFails { witness: w.label() });
        }
        Ok(Self::from_sorted(system.n(), bases))
    }

    pub fn from_transversals(n: usize, bases: impl IntoIterator<Item = Transversal>) -> Result<Self> {
        Self::new(&BasisSystem::from_transversals(n, bases)?)
    }

    /// Parses whitespace-separated transversals.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(&BasisSystem::parse_lagrangian(text)?)
    }

    pub(crate) fn from_sorted(n: usize, bases: Vec<Transversal>) -> Self {
        let position = bases.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        LagrangianMatroid { n, bases, position }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[Transversal] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn contains(&self, t: &Transversal) -> bool {
        self.position.contains_key(t)
    }

    pub fn index_of(&self, t: &Transversal) -> Option<usize> {
        self.position.get(t).copied()
    }

    pub fn require_basis(&self, t: &Transversal) -> Result<usize> {
        if t.n() != self.n {
            return Err(Error::Dimension(format!(
                "{t} has ground size {}, expected {}",
                t.n(),
                self.n
            )));
        }
        self.index_of(t).ok_or_else(|| Error::NotABasis(t.label()))
    }

    /// Label-least basis.
    pub fn first_basis(&self) -> Transversal {
        self.bases[0]
    }

    pub fn system(&self) -> BasisSystem {
        BasisSystem::from_transversals(self.n, self.bases.iter().copied()).expect("non-empty")
    }

    pub fn is_even(&self) -> bool {
        let parity = self.bases[0].starred_count() % 2;
        self.bases.iter().all(|t| t.starred_count() % 2 == parity)
    }

    pub fn max_height(&self, fundamental: &Transversal) -> usize {
        self.bases.iter().map(|b| height(b, fundamental)).max().unwrap_or(0)
    }

    pub fn labels(&self) -> Vec<String> {
        self.bases.iter().map(Transversal::label).collect()
    }

    pub fn apply(&self, w: &SignedPermutation) -> LagrangianMatroid {
        let mut bases: Vec<Transversal> = self.bases.iter().map(|b| w.apply_transversal(b)).collect();
        bases.sort();
        Self::from_sorted(self.n, bases)
    }
}

/// Every non-empty collection of transversals that satisfies Maximality,
/// ordered by the bitmask of the collection (bit `m` ↔ transversal with
/// plus-mask `m`).
pub fn enumerate_lagrangian_matroids(n: usize) -> Result<Vec<LagrangianMatroid>> {
    if n == 0 || n > CENSUS_GUARD {
        return Err(Error::GuardExceeded {
            what: "matroid census ground size",
            got: n,
            limit: CENSUS_GUARD,
        });
    }
    let all = Transversal::all(n)?;
    let orderings: Vec<Vec<usize>> = enumerate_orderings(n)?.map(|w| w.rank_table()).collect();
    let count = 1u64 << all.len();
    let mut out = Vec::new();
    let mut cache = Vec::new();
    for code in 1..count {
        let members: Vec<AdmissibleSet> = (0..all.len())
            .filter(|&i| code >> i & 1 == 1)
            .map(|i| all[i].to_set())
            .collect();
        let passes = orderings
            .iter()
            .all(|table| gale_maximum(table, &mut cache, &members).is_some());
        if passes {
            let mut ts: Vec<Transversal> = members.iter().map(|s| s.to_transversal().unwrap()).collect();
            ts.sort();
            out.push(LagrangianMatroid::from_sorted(n, ts));
        }
    }
    Ok(out)
}

/// Maximality for a raw collection of transversals (no construction
/// checks); used by the census oracles.
pub fn transversals_satisfy_maximality(n: usize, members: &[Transversal]) -> Result<bool> {
    let system = BasisSystem::from_transversals(n, members.iter().copied())?;
    Ok(check_maximality(&system)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundIndex;

    fn system(text: &str) -> BasisSystem {
        BasisSystem::parse_lagrangian(text).unwrap()
    }

    pub(crate) const FIG1: &str = "1*2*3* 12*3* 1*23* 1*2*3 123* 12*3";
    pub(crate) const FIG2: &str = "1*2*3* 123* 12*3 1*23";

    #[test]
    fn maximality_examples() {
        assert!(check_maximality(&system(FIG1)).unwrap().holds);
        assert!(check_maximality(&system("12 1*2*")).unwrap().holds);
        let report = check_maximality(&system("123 1*2*3*")).unwrap();
        assert!(!report.holds);
        let w = report.witness.unwrap();
        let s = system("123 1*2*3*");
        assert_eq!(count_maxima(&s, &w).unwrap(), 0);
        // The witness is the first failing ordering in enumeration order.
        let first = enumerate_orderings(3)
            .unwrap()
            .find(|w| count_maxima(&s, w).unwrap() == 0)
            .unwrap();
        assert_eq!(w, first);
    }

    #[test]
    fn empty_system_rejected() {
        assert!(matches!(BasisSystem::new(2, 2, vec![]), Err(Error::EmptyBasisSystem)));
    }

    #[test]
    fn lower_rank_systems() {
        // Rank-1 symplectic matroid: all admissible singletons.
        let all: Vec<AdmissibleSet> = (1..=2)
            .flat_map(|i| [GroundIndex::plain(i), GroundIndex::starred(i)])
            .map(|x| AdmissibleSet::new(2, [x]).unwrap())
            .collect();
        let s = BasisSystem::new(2, 1, all).unwrap();
        assert!(check_maximality(&s).unwrap().holds);
        assert!(is_even(&s).is_err());
        let two = BasisSystem::new(
            2,
            1,
            [
                AdmissibleSet::parse("1", 2).unwrap(),
                AdmissibleSet::parse("1*", 2).unwrap(),
            ],
        )
        .unwrap();
        assert!(check_maximality(&two).unwrap().holds);
    }

    #[test]
    fn height_examples() {
        let f = Transversal::parse("1*2*3*", 3).unwrap();
        assert_eq!(height(&f, &f), 0);
        let a = Transversal::parse("123", 3).unwrap();
        assert_eq!(height(&a, &f), 3);
        let b = Transversal::parse("12*3", 3).unwrap();
        assert_eq!(height(&b, &f), 2);
        for x in Transversal::all(3).unwrap() {
            for y in Transversal::all(3).unwrap() {
                assert_eq!(height(&x, &y), height(&y, &x));
                assert_eq!(height(&x, &y) + x.overlap(&y), 3);
            }
        }
    }

    #[test]
    fn evenness() {
        assert!(is_even(&system(FIG2)).unwrap());
        assert!(!is_even(&system(FIG1)).unwrap());
        assert!(is_even(&system("12*")).unwrap());
    }

    #[test]
    fn census_small() {
        let one = enumerate_lagrangian_matroids(1).unwrap();
        let labels: Vec<Vec<String>> = one.iter().map(|m| m.labels()).collect();
        assert_eq!(
            labels,
            vec![vec!["1*".to_string()], vec!["1".into()], vec!["1".into(), "1*".into()]]
        );
        let three = enumerate_lagrangian_matroids(3).unwrap();
        let fig2 = LagrangianMatroid::parse(FIG2).unwrap();
        assert!(three.contains(&fig2));
        assert!(enumerate_lagrangian_matroids(5).is_err());
    }

    #[test]
    fn census_systems_have_unique_maxima() {
        for n in 1..=3 {
            for m in enumerate_lagrangian_matroids(n).unwrap() {
                let s = m.system();
                for w in enumerate_orderings(n).unwrap() {
                    assert_eq!(count_maxima(&s, &w).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn maximality_invariant_under_signed_permutations() {
        let all = Transversal::all(3).unwrap();
        let perms: Vec<SignedPermutation> = enumerate_orderings(3).unwrap().collect();
        for code in 1u32..256 {
            let members: Vec<Transversal> = (0..8).filter(|i| code >> i & 1 == 1).map(|i| all[i]).collect();
            let holds = transversals_satisfy_maximality(3, &members).unwrap();
            for w in &perms {
                let image: Vec<Transversal> = members.iter().map(|t| w.apply_transversal(t)).collect();
                assert_eq!(transversals_satisfy_maximality(3, &image).unwrap(), holds);
            }
        }
    }

    #[test]
    fn even_census_heights_are_even() {
        for m in enumerate_lagrangian_matroids(3).unwrap() {
            if m.is_even() {
                for a in m.bases() {
                    for b in m.bases() {
                        assert_eq!(height(a, b) % 2, 0);
                    }
                }
            }
        }
    }
}
