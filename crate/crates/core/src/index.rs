//! Height-increasing paths, the index of an oriented Lagrangian matroid,
//! and its comparison with the index of the quadratic form `C_F`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{congruence_diagonalize, kronecker_index, rank, Rational};
use crate::ground::Transversal;
use crate::matroid::height;
use crate::orient::{extend_signs, validate_orientation, SignTable};
use crate::polytope::{is_inducing, OrientedSkeleton, PolytopeSkeleton};
use crate::represent::{fundamental_reduction, relative_signs, Representation};

/// Largest number of paths enumerated by [`verify_index_well_defined`].
pub const PATH_GUARD: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncreasingPath {
    pub fundamental: Transversal,
    pub vertices: Vec<Transversal>,
}

impl IncreasingPath {
    pub fn heights(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| height(v, &self.fundamental)).collect()
    }

    pub fn end(&self) -> Transversal {
        *self.vertices.last().expect("paths start at the fundamental basis")
    }
}

/// Greedy ascent from `f`: move to a neighbour of least greater height,
/// ties broken by label, until the maximal height is reached.
pub fn find_increasing_path(sk: &PolytopeSkeleton, f: &Transversal) -> Result<IncreasingPath> {
    sk.matroid().require_basis(f)?;
    let top = sk.matroid().max_height(f);
    let mut vertices = vec![*f];
    let mut cur = *f;
    while height(&cur, f) < top {
        let h = height(&cur, f);
        let next = sk
            .neighbours(&cur)
            .into_iter()
            .filter(|v| height(v, f) > h)
            .min_by_key(|v| (height(v, f), *v))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no increasing edge from {cur} at height {h} below maximum {top} (fundamental {f})"
                ))
            })?;
        vertices.push(next);
        cur = next;
    }
    Ok(IncreasingPath {
        fundamental: *f,
        vertices,
    })
}

/// Sign changes in a sequence of ±1.
pub fn sign_changes(signs: &[i8]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub index: usize,
    pub max_height: usize,
    pub path: IncreasingPath,
    pub signs: Vec<i8>,
}

fn require_table(sk: &PolytopeSkeleton, st: &SignTable, f: &Transversal) -> Result<()> {
    if st.bases() != sk.vertices() {
        return Err(Error::InvalidOrientation(
            "sign table belongs to a different matroid".into(),
        ));
    }
    let row = st.row(f)?;
    if let Some(v) = validate_orientation(sk.matroid(), &row)?.first() {
        return Err(Error::InvalidOrientation(v.to_string()));
    }
    Ok(())
}

/// Sign changes of `s(F, ·)` along the greedy increasing path.
pub fn index_relative(sk: &PolytopeSkeleton, st: &SignTable, f: &Transversal) -> Result<IndexReport> {
    require_table(sk, st, f)?;
    let path = find_increasing_path(sk, f)?;
    let signs: Vec<i8> = path.vertices.iter().map(|v| st.get(f, v)).collect();
    Ok(IndexReport {
        index: sign_changes(&signs),
        max_height: sk.matroid().max_height(f),
        path,
        signs,
    })
}

/// Outcome of enumerating every height-increasing path from `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCensus {
    /// All complete paths agree and none stalls below the maximal height.
    pub holds: bool,
    /// Paths that reach the maximal height.
    pub paths: usize,
    /// Paths that end below the maximal height.
    pub stalled: usize,
    /// Distinct sign-change counts seen on complete paths.
    pub counts: BTreeSet<usize>,
}

/// Enumerates every strictly height-increasing path from `f` and compares
/// their sign-change counts.
pub fn verify_index_well_defined(sk: &PolytopeSkeleton, st: &SignTable, f: &Transversal) -> Result<PathCensus> {
    require_table(sk, st, f)?;
    let top = sk.matroid().max_height(f);
    let mut census = PathCensus {
        holds: true,
        paths: 0,
        stalled: 0,
        counts: BTreeSet::new(),
    };
    let mut stack = vec![(*f, 0usize)];
    while let Some((v, changes)) = stack.pop() {
        let h = height(&v, f);
        let ups: Vec<Transversal> = sk.neighbours(&v).into_iter().filter(|u| height(u, f) > h).collect();
        if ups.is_empty() {
            if h == top {
                census.paths += 1;
                census.counts.insert(changes);
            } else {
                census.stalled += 1;
            }
            if census.paths + census.stalled > PATH_GUARD {
                return Err(Error::GuardExceeded {
                    what: "height-increasing path count",
                    got: census.paths + census.stalled,
                    limit: PATH_GUARD,
                });
            }
            continue;
        }
        for u in ups.into_iter().rev() {
            let step = usize::from(st.get(f, &v) != st.get(f, &u));
            stack.push((u, changes + step));
        }
    }
    census.holds = census.counts.len() == 1 && census.stalled == 0;
    Ok(census)
}

/// Inducing edges along the greedy increasing path.
pub fn count_inducing_edges(os: &OrientedSkeleton, f: &Transversal) -> Result<usize> {
    let path = find_increasing_path(os.skeleton(), f)?;
    let mut count = 0;
    for w in path.vertices.windows(2) {
        let inducing = is_inducing(os, &w[0], &w[1], f)
            .ok_or_else(|| Error::Internal(format!("{} and {} are not adjacent", w[0], w[1])))?;
        count += usize::from(inducing);
    }
    Ok(count)
}

/// Matroid index against two quadratic-form indices of `C_F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticCrosscheck {
    pub fundamental: Transversal,
    pub matroid_index: usize,
    pub kronecker_index: usize,
    pub oracle_index: usize,
    pub max_height: usize,
    pub rank: usize,
    pub signature: i64,
    pub agree: bool,
}

pub fn crosscheck_quadratic(
    r: &Representation<Rational>,
    sk: &PolytopeSkeleton,
    f: &Transversal,
) -> Result<QuadraticCrosscheck> {
    let m = sk.matroid();
    let st = extend_signs(m, &relative_signs(r, m, f)?)?;
    let report = index_relative(sk, &st, f)?;
    let cf = fundamental_reduction(r, f)?.cf;
    let kron = kronecker_index(&cf)?;
    let oracle = congruence_diagonalize(&cf)?;
    let r_cf = rank(&cf);
    let agree = report.index == kron.index() && kron.index() == oracle.index() && r_cf == report.max_height;
    Ok(QuadraticCrosscheck {
        fundamental: *f,
        matroid_index: report.index,
        kronecker_index: kron.index(),
        oracle_index: oracle.index(),
        max_height: report.max_height,
        rank: r_cf,
        signature: oracle.signature(),
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, Matrix};
    use crate::ground::{enumerate_orderings, AdmissibleSet};
    use crate::matroid::{enumerate_lagrangian_matroids, LagrangianMatroid};
    use crate::orient::{canonical_even_orientation, enumerate_orientations, RelativeSigns, Sign};
    use crate::polytope::{orient_skeleton, skeleton};
    use crate::represent::representation_table;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const FIG2: &str = "1*2*3* 123* 12*3 1*23";
    const FIG3: &str = "1*23 12*3 123* 123";

    fn t(s: &str) -> Transversal {
        Transversal::parse_inferred(s).unwrap()
    }

    fn sk(s: &str) -> PolytopeSkeleton {
        skeleton(&LagrangianMatroid::parse(s).unwrap()).unwrap()
    }

    fn fig3_tables() -> (PolytopeSkeleton, SignTable, SignTable) {
        let s = sk(FIG3);
        let m = s.matroid().clone();
        let f = t("123");
        let left = RelativeSigns::from_fn(&m, f, |b| if *b == f { Sign::Plus } else { Sign::Minus }).unwrap();
        let right = RelativeSigns::from_fn(&m, f, |_| Sign::Plus).unwrap();
        let l = extend_signs(&m, &left).unwrap();
        let r = extend_signs(&m, &right).unwrap();
        (s, l, r)
    }

    #[test]
    fn path_examples() {
        let s = sk(FIG3);
        let p = find_increasing_path(&s, &t("123")).unwrap();
        assert_eq!(p.vertices, vec![t("123"), t("1*23")]);
        let q = find_increasing_path(&s, &t("1*23")).unwrap();
        assert_eq!(q.vertices, vec![t("1*23"), t("123"), t("12*3")]);
        assert_eq!(q.heights(), vec![0, 1, 2]);
        let single = sk("12*");
        assert_eq!(find_increasing_path(&single, &t("12*")).unwrap().vertices.len(), 1);
        assert!(find_increasing_path(&s, &t("1*2*3*")).is_err());
    }

    #[test]
    fn all_ones_pair_index_table() {
        let (s, left, right) = fig3_tables();
        for b in s.vertices() {
            assert_eq!(index_relative(&s, &left, b).unwrap().index, 1);
            let expected = if *b == t("123") { 0 } else { 1 };
            assert_eq!(index_relative(&s, &right, b).unwrap().index, expected);
        }
        let r = index_relative(&s, &right, &t("123")).unwrap();
        assert_eq!(r.max_height, 1);
    }

    #[test]
    fn mixed_faces_index() {
        let rep = crate::represent::tests::fig1();
        let m = rep.matroid().unwrap();
        let s = skeleton(&m).unwrap();
        let st = representation_table(&rep, &m).unwrap();
        assert_eq!(index_relative(&s, &st, &t("1*2*3*")).unwrap().index, 0);
    }

    #[test]
    fn even_index_is_half_height() {
        let s = sk(FIG2);
        let st = canonical_even_orientation(s.matroid()).unwrap();
        let r = index_relative(&s, &st, &t("1*2*3*")).unwrap();
        assert_eq!((r.index, r.max_height), (1, 2));
    }

    #[test]
    fn well_definedness_examples() {
        let (s, _, right) = fig3_tables();
        let c = verify_index_well_defined(&s, &right, &t("1*23")).unwrap();
        assert!(c.holds);
        assert_eq!(c.counts.into_iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(c.paths, 4);
        let f2 = sk(FIG2);
        let st = canonical_even_orientation(f2.matroid()).unwrap();
        let c2 = verify_index_well_defined(&f2, &st, &t("1*2*3*")).unwrap();
        assert!(c2.holds);
        assert_eq!((c2.paths, c2.counts.iter().next().copied()), (3, Some(1)));
        let one = sk("1*2");
        let st1 = enumerate_orientations(one.matroid()).unwrap().remove(0);
        let c3 = verify_index_well_defined(&one, &st1, &t("1*2")).unwrap();
        assert!(c3.holds);
        assert_eq!(c3.counts.iter().next().copied(), Some(0));
    }

    #[test]
    fn inducing_edge_examples() {
        let (s, left, right) = fig3_tables();
        let m = s.matroid().clone();
        let f = t("123");
        assert_eq!(
            count_inducing_edges(&orient_skeleton(&m, &right).unwrap(), &f).unwrap(),
            0
        );
        assert_eq!(
            count_inducing_edges(&orient_skeleton(&m, &left).unwrap(), &f).unwrap(),
            1
        );
        let f2 = sk(FIG2);
        let st = canonical_even_orientation(f2.matroid()).unwrap();
        let os = orient_skeleton(f2.matroid(), &st).unwrap();
        assert_eq!(count_inducing_edges(&os, &t("1*2*3*")).unwrap(), 1);
    }

    #[test]
    fn crosscheck_examples() {
        let rep = crate::represent::tests::fig3_right();
        let s = skeleton(&rep.matroid().unwrap()).unwrap();
        let a = crosscheck_quadratic(&rep, &s, &t("123")).unwrap();
        assert_eq!(
            (a.rank, a.max_height, a.matroid_index, a.kronecker_index, a.oracle_index),
            (1, 1, 0, 0, 0)
        );
        assert!(a.agree);
        let b = crosscheck_quadratic(&rep, &s, &t("1*23")).unwrap();
        assert_eq!(
            (b.rank, b.max_height, b.matroid_index, b.kronecker_index, b.oracle_index),
            (2, 2, 1, 1, 1)
        );
        let hyp = Representation::with_identity(Matrix::from_ints(&[vec![0, 1], vec![1, 0]])).unwrap();
        let hs = skeleton(&hyp.matroid().unwrap()).unwrap();
        let c = crosscheck_quadratic(&hyp, &hs, &t("1*2*")).unwrap();
        assert_eq!((c.rank, c.matroid_index, c.signature), (2, 1, 0));
        assert!(c.agree);
    }

    #[test]
    fn census_path_independence() {
        for n in 1..=3 {
            for m in enumerate_lagrangian_matroids(n).unwrap() {
                let s = skeleton(&m).unwrap();
                for st in enumerate_orientations(&m).unwrap() {
                    let os = orient_skeleton(&m, &st).unwrap();
                    for f in m.bases() {
                        let census = verify_index_well_defined(&s, &st, f).unwrap();
                        assert!(census.holds, "{:?} from {f}", m.labels());
                        let idx = index_relative(&s, &st, f).unwrap().index;
                        assert!(census.counts.contains(&idx));
                        assert_eq!(count_inducing_edges(&os, f).unwrap(), idx);
                    }
                }
            }
        }
    }

    #[test]
    fn random_crosscheck() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let n = rng.gen_range(2..=4);
            let mut sm = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v = int(rng.gen_range(-9..=9));
                    sm.set(i, j, v.clone());
                    sm.set(j, i, v);
                }
            }
            let rep = Representation::with_identity(sm).unwrap();
            let s = skeleton(&rep.matroid().unwrap()).unwrap();
            for f in s.vertices() {
                assert!(crosscheck_quadratic(&rep, &s, f).unwrap().agree);
            }
        }
    }

    /// `Σ 3^i y_i` with `y` the cube point of `w⁻¹ A`.
    fn functional(w: &crate::ground::SignedPermutation, a: &Transversal) -> i64 {
        let pre = AdmissibleSet::new(a.n(), a.members().into_iter().map(|x| w.apply_inverse(x)))
            .unwrap()
            .to_transversal()
            .unwrap();
        pre.point()
            .iter()
            .enumerate()
            .map(|(i, &y)| 3i64.pow(i as u32 + 1) * y as i64)
            .sum()
    }

    #[test]
    fn functional_increases_along_paths() {
        for m in enumerate_lagrangian_matroids(3).unwrap() {
            let s = skeleton(&m).unwrap();
            for f in m.bases() {
                let path = find_increasing_path(&s, f).unwrap();
                let bottom = Transversal::all_starred(3).unwrap();
                for w in enumerate_orderings(3)
                    .unwrap()
                    .filter(|w| w.apply_transversal(&bottom) == *f)
                {
                    let values: Vec<i64> = path.vertices.iter().map(|v| functional(&w, v)).collect();
                    assert!(values.windows(2).all(|p| p[0] < p[1]), "{values:?}");
                }
            }
        }
    }
}
