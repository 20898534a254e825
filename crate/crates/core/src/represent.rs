//! Representations `(left | right)` with symmetric `left · rightᵗ`: basis
//! extraction, the fundamental reduction to `(C_F, I)`, and signs of bases
//! as signs of principal minors.

use crate::error::{Error, Result};
use crate::exactlin::{det, normalize_right_block, rank, sign_of, FieldElement, Matrix, Rational};
use crate::ground::{AdmissibleSet, GroundIndex, Transversal, ORDERING_GUARD};
use crate::matroid::{BasisSystem, LagrangianMatroid};
use crate::orient::{extend_signs, RelativeSigns, Sign, SignTable};

/// Largest n for exhaustive minor scans.
pub const EXTRACTION_GUARD: usize = 16;

/// The rows of `(left | right)` span a Lagrangian subspace; column `i` of
/// `left` is labelled `i`, column `i` of `right` is labelled `i*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<T> {
    left: Matrix<T>,
    right: Matrix<T>,
}

impl<T: FieldElement> Representation<T> {
    pub fn new(left: Matrix<T>, right: Matrix<T>) -> Result<Self> {
        let n = left.rows();
        for (name, m) in [("left", &left), ("right", &right)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!(
                    "{name} block is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if n == 0 {
            return Err(Error::Dimension("empty representation".into()));
        }
        if n > EXTRACTION_GUARD {
            return Err(Error::GuardExceeded {
                what: "representation size",
                got: n,
                limit: EXTRACTION_GUARD,
            });
        }
        let product = left.mul(&right.transpose())?;
        if !product.is_symmetric() {
            return Err(Error::NotSymmetric("left · rightᵗ".into()));
        }
        let r = rank(&left.hconcat(&right)?);
        if r != n {
            return Err(Error::RankDeficient { rank: r, expected: n });
        }
        Ok(Representation { left, right })
    }

    /// The symmetric shorthand `(S | I)`.
    pub fn with_identity(left: Matrix<T>) -> Result<Self> {
        let n = left.rows();
        Self::new(left, Matrix::identity(n))
    }

    pub fn n(&self) -> usize {
        self.left.rows()
    }

    pub fn left(&self) -> &Matrix<T> {
        &self.left
    }

    pub fn right(&self) -> &Matrix<T> {
        &self.right
    }

    /// Column labelled `x`, restricted to the first `rows` rows.
    fn column(&self, x: GroundIndex, rows: usize) -> Vec<T> {
        let block = if x.is_starred() { &self.right } else { &self.left };
        (0..rows).map(|r| block.get(r, x.coord()).clone()).collect()
    }

    /// Minor on the columns of `set` (in coordinate order) and the first
    /// `|set|` rows.
    pub fn minor(&self, set: &AdmissibleSet) -> T {
        let k = set.len();
        let cols: Vec<Vec<T>> = set.members().into_iter().map(|x| self.column(x, k)).collect();
        let mut m = Matrix::zeros(k, k);
        for (c, col) in cols.iter().enumerate() {
            m.set_column(c, col);
        }
        det(&m).expect("square")
    }

    pub fn transversal_minor(&self, t: &Transversal) -> T {
        self.minor(&t.to_set())
    }

    /// Admissible `k`-sets whose minor on the first `k` rows is non-zero.
    pub fn extract_bases(&self, k: usize) -> Result<BasisSystem> {
        let n = self.n();
        if k == 0 || k > n {
            return Err(Error::Dimension(format!("rank {k} outside 1..={n}")));
        }
        let mut bases = Vec::new();
        for support in 0u32..(1 << n) {
            if support.count_ones() as usize != k {
                continue;
            }
            let mut plus = 0u32;
            loop {
                let set = AdmissibleSet::from_masks(n, plus, support & !plus)?;
                if !self.minor(&set).is_zero() {
                    bases.push(set);
                }
                // Next subset of `support`.
                plus = plus.wrapping_sub(support) & support;
                if plus == 0 {
                    break;
                }
            }
        }
        BasisSystem::new(n, k, bases)
    }

    /// The represented Lagrangian matroid. Maximality is re-verified when
    /// the ordering scan is within its guard.
    pub fn matroid(&self) -> Result<LagrangianMatroid> {
        let system = self.extract_bases(self.n())?;
        if self.n() <= ORDERING_GUARD {
            LagrangianMatroid::new(&system)
        } else {
            Ok(LagrangianMatroid::from_sorted(self.n(), system.transversals()?))
        }
    }

    /// The representation with every row replaced by `m · rows`.
    pub fn row_transform(&self, m: &Matrix<T>) -> Result<Self> {
        Self::new(m.mul(&self.left)?, m.mul(&self.right)?)
    }
}

/// `(C_F | I)` reached from a representation by moving `F` to the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalReduction {
    pub fundamental: Transversal,
    /// Symmetric; rows and columns indexed by underlying index.
    pub cf: Matrix<Rational>,
}

impl FundamentalReduction {
    /// The principal minor of `C_F` on the coordinates where `g` and `F`
    /// differ.
    pub fn minor(&self, g: &Transversal) -> Rational {
        let diff = g.difference_mask(&self.fundamental);
        let idx: Vec<usize> = (0..self.cf.rows()).filter(|&i| diff >> i & 1 == 1).collect();
        self.cf.principal_minor(&idx)
    }

    /// Sign of [`Self::minor`]: 0 exactly when `g` is not a basis.
    pub fn sign_of_basis(&self, g: &Transversal) -> i8 {
        sign_of(&self.minor(g))
    }
}

/// Swaps `i ↔ i*` for every unstarred `i ∈ F` (negating the column moved
/// left), then row-reduces the right block to the identity.
pub fn fundamental_reduction(r: &Representation<Rational>, f: &Transversal) -> Result<FundamentalReduction> {
    let n = r.n();
    if f.n() != n {
        return Err(Error::Dimension(format!("{f} has ground size {}, expected {n}", f.n())));
    }
    let mut left = r.left.clone();
    let mut right = r.right.clone();
    for i in 0..n {
        if f.sign(i) > 0 {
            let moved_left: Vec<Rational> = r.right.column(i).iter().map(|v| -v).collect();
            left.set_column(i, &moved_left);
            right.set_column(i, &r.left.column(i));
        }
    }
    let cf = normalize_right_block(&left, &right).map_err(|e| match e {
        Error::Singular(_) => Error::NotABasis(f.label()),
        e => e,
    })?;
    if !cf.is_symmetric() {
        return Err(Error::Internal(format!("C_F at {f} is not symmetric")));
    }
    Ok(FundamentalReduction { fundamental: *f, cf })
}

/// Signs of all bases of `m` relative to `f`, read off `C_F`.
pub fn relative_signs(r: &Representation<Rational>, m: &LagrangianMatroid, f: &Transversal) -> Result<RelativeSigns> {
    m.require_basis(f)?;
    let fr = fundamental_reduction(r, f)?;
    let mut values = Vec::with_capacity(m.len());
    for g in m.bases() {
        let s = Sign::from_value(fr.sign_of_basis(g) as i64)
            .ok_or_else(|| Error::Internal(format!("basis {g} has a vanishing minor at {f}")))?;
        values.push(s);
    }
    RelativeSigns::from_vector(m, *f, &values)
}

/// The orientation defined by a representation, seeded at the label-least
/// basis.
pub fn representation_table(r: &Representation<Rational>, m: &LagrangianMatroid) -> Result<SignTable> {
    extend_signs(m, &relative_signs(r, m, &m.first_basis())?)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactlin::{int, Gf2};
    use crate::matroid::check_maximality;
    use crate::orient::validate_orientation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(rows: &[Vec<i64>]) -> Matrix<Rational> {
        Matrix::from_ints(rows)
    }

    fn t(s: &str) -> Transversal {
        Transversal::parse_inferred(s).unwrap()
    }

    fn labels(system: &BasisSystem) -> Vec<String> {
        let mut l = system.labels();
        l.sort();
        l
    }

    fn sorted(items: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = items.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    pub(crate) fn fig1() -> Representation<Rational> {
        Representation::with_identity(q(&[vec![1, 1, 1], vec![1, 2, 2], vec![1, 2, 2]])).unwrap()
    }

    pub(crate) fn fig3_left() -> Representation<Rational> {
        Representation::new(Matrix::identity(3), q(&[vec![1; 3], vec![1; 3], vec![1; 3]])).unwrap()
    }

    pub(crate) fn fig3_right() -> Representation<Rational> {
        Representation::new(Matrix::identity(3), q(&[vec![-1; 3], vec![-1; 3], vec![-1; 3]])).unwrap()
    }

    pub(crate) fn random_symmetric_rep(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Representation<Rational> {
        let mut s = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = int(rng.gen_range(lo..=hi));
                s.set(i, j, v.clone());
                s.set(j, i, v);
            }
        }
        Representation::with_identity(s).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Representation::with_identity(q(&[vec![0, 1], vec![2, 0]])),
            Err(Error::NotSymmetric(_))
        ));
        assert!(matches!(
            Representation::new(q(&[vec![1, 0], vec![1, 0]]), q(&[vec![0, 0], vec![0, 0]])),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        ));
        assert!(matches!(
            Representation::new(q(&[vec![1, 0]]), q(&[vec![1, 0]])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn extraction_examples() {
        let b1 = fig1().extract_bases(3).unwrap();
        assert_eq!(
            labels(&b1),
            sorted(&["1*2*3*", "12*3*", "1*23*", "1*2*3", "123*", "12*3"])
        );
        let fig2 =
            Representation::with_identity(Matrix::<Gf2>::from_bits(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]))
                .unwrap();
        assert_eq!(
            labels(&fig2.extract_bases(3).unwrap()),
            sorted(&["1*2*3*", "123*", "12*3", "1*23"])
        );
        let perm = q(&[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]);
        let l = Representation::with_identity(perm).unwrap();
        assert_eq!(
            labels(&l.extract_bases(4).unwrap()),
            sorted(&["1*2*3*4*", "123*4*", "1*2*34", "1234"])
        );
        for r in [fig3_left(), fig3_right()] {
            assert_eq!(
                labels(&r.extract_bases(3).unwrap()),
                sorted(&["1*23", "12*3", "123*", "123"])
            );
        }
    }

    #[test]
    fn same_entries_different_fields() {
        let bits = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        let over_q = Representation::with_identity(q(&bits
            .iter()
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect::<Vec<_>>()))
        .unwrap()
        .extract_bases(3)
        .unwrap();
        let over_2 = Representation::with_identity(Matrix::<Gf2>::from_bits(&bits))
            .unwrap()
            .extract_bases(3)
            .unwrap();
        assert!(over_q.bases().contains(&AdmissibleSet::parse("123", 3).unwrap()));
        assert!(!over_2.bases().contains(&AdmissibleSet::parse("123", 3).unwrap()));
        assert!(check_maximality(&over_q).unwrap().holds);
    }

    #[test]
    fn lower_rank_extraction() {
        let k1 = fig1().extract_bases(1).unwrap();
        assert_eq!(labels(&k1), sorted(&["1", "2", "3", "1*"]));
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let n = rng.gen_range(2..=3);
            let r = random_symmetric_rep(&mut rng, n, -2, 2);
            for k in 1..=n {
                let system = r.extract_bases(k).unwrap();
                assert!(check_maximality(&system).unwrap().holds, "k={k}");
            }
        }
        assert!(fig1().extract_bases(0).is_err());
        assert!(fig1().extract_bases(4).is_err());
    }

    #[test]
    fn reduction_examples() {
        let c = q(&[vec![1, 1, 1], vec![1, 2, 2], vec![1, 2, 2]]);
        let fr = fundamental_reduction(&fig1(), &t("1*2*3*")).unwrap();
        assert_eq!(fr.cf, c);
        let right = fig3_right();
        assert_eq!(
            fundamental_reduction(&right, &t("123")).unwrap().cf,
            q(&[vec![1; 3], vec![1; 3], vec![1; 3]])
        );
        assert_eq!(
            fundamental_reduction(&right, &t("1*23")).unwrap().cf,
            q(&[vec![-1, -1, -1], vec![-1, 0, 0], vec![-1, 0, 0]])
        );
        assert_eq!(
            fundamental_reduction(&fig1(), &t("12*3*")).unwrap().cf,
            q(&[vec![-1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]])
        );
        assert!(matches!(
            fundamental_reduction(&fig1(), &t("123")),
            Err(Error::NotABasis(_))
        ));
    }

    #[test]
    fn sign_examples() {
        let right = fundamental_reduction(&fig3_right(), &t("123")).unwrap();
        assert_eq!(right.sign_of_basis(&t("123")), 1);
        assert_eq!(right.sign_of_basis(&t("1*23")), 1);
        let left = fundamental_reduction(&fig3_left(), &t("123")).unwrap();
        assert_eq!(left.sign_of_basis(&t("1*23")), -1);
        assert_eq!(left.sign_of_basis(&t("1*2*3")), 0);
        let f1 = fundamental_reduction(&fig1(), &t("1*2*3*")).unwrap();
        for g in fig1().matroid().unwrap().bases() {
            assert_eq!(f1.sign_of_basis(g), 1);
        }
    }

    #[test]
    fn zero_minor_iff_non_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let r = random_symmetric_rep(&mut rng, n, -3, 3);
            let m = r.matroid().unwrap();
            for f in m.bases() {
                let fr = fundamental_reduction(&r, f).unwrap();
                for g in Transversal::all(n).unwrap() {
                    assert_eq!(fr.sign_of_basis(&g) != 0, m.contains(&g));
                }
            }
        }
    }

    #[test]
    fn random_representations_are_oriented() {
        let mut rng = ChaCha8Rng::seed_from_u64(200);
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let r = random_symmetric_rep(&mut rng, n, -5, 5);
            let m = r.matroid().unwrap();
            let table = representation_table(&r, &m).unwrap();
            for g in m.bases() {
                let signs = relative_signs(&r, &m, g).unwrap();
                assert!(validate_orientation(&m, &signs).unwrap().is_empty());
                // Reading C_G directly agrees with changing the fundamental basis.
                assert_eq!(table.row(g).unwrap(), signs);
            }
        }
    }

    #[test]
    fn extraction_invariant_under_row_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut checked = 0;
        while checked < 50 {
            let n = rng.gen_range(1..=4);
            let r = random_symmetric_rep(&mut rng, n, -4, 4);
            let mut g = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    g.set(i, j, int(rng.gen_range(-3..=3)));
                }
            }
            if num_traits::Zero::is_zero(&det(&g).unwrap()) {
                continue;
            }
            let moved = r.row_transform(&g).unwrap();
            assert_eq!(moved.extract_bases(n).unwrap(), r.extract_bases(n).unwrap());
            checked += 1;
        }
    }
}
