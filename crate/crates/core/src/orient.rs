//! Relative sign functions, the orientation axioms, two-argument sign
//! tables, orientation enumeration and oriented isomorphism.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ground::{enumerate_orderings, SignedPermutation, Transversal};
use crate::matroid::{height, LagrangianMatroid};

/// Largest basis count for the orientation scan.
pub const ORIENTATION_GUARD: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    /// `(-1)^k` for `odd = k is odd`.
    pub fn parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value())
    }
}

/// Signs of all bases relative to a fundamental basis `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelativeSigns {
    fundamental: Transversal,
    signs: BTreeMap<Transversal, Sign>,
}

impl RelativeSigns {
    pub fn new(m: &LagrangianMatroid, fundamental: Transversal, signs: BTreeMap<Transversal, Sign>) -> Result<Self> {
        m.require_basis(&fundamental)?;
        if signs.len() != m.len() || !signs.keys().all(|t| m.contains(t)) {
            let missing: Vec<String> = m
                .bases()
                .iter()
                .filter(|b| !signs.contains_key(b))
                .map(|b| b.label())
                .collect();
            let extra: Vec<String> = signs.keys().filter(|t| !m.contains(t)).map(|t| t.label()).collect();
            return Err(Error::InvalidOrientation(format!(
                "sign domain differs from the bases (missing [{}], not bases [{}])",
                missing.join(", "),
                extra.join(", ")
            )));
        }
        Ok(RelativeSigns { fundamental, signs })
    }

    pub fn from_fn(m: &LagrangianMatroid, fundamental: Transversal, f: impl Fn(&Transversal) -> Sign) -> Result<Self> {
        let signs = m.bases().iter().map(|b| (*b, f(b))).collect();
        Self::new(m, fundamental, signs)
    }

    /// Signs listed in basis order.
    pub fn from_vector(m: &LagrangianMatroid, fundamental: Transversal, values: &[Sign]) -> Result<Self> {
        if values.len() != m.len() {
            return Err(Error::Dimension(format!(
                "{} signs for {} bases",
                values.len(),
                m.len()
            )));
        }
        let signs = m.bases().iter().copied().zip(values.iter().copied()).collect();
        Self::new(m, fundamental, signs)
    }

    pub fn fundamental(&self) -> Transversal {
        self.fundamental
    }

    pub fn get(&self, t: &Transversal) -> Option<Sign> {
        self.signs.get(t).copied()
    }

    pub fn signs(&self) -> &BTreeMap<Transversal, Sign> {
        &self.signs
    }

    /// Signs in basis order.
    pub fn vector(&self) -> Vec<Sign> {
        self.signs.values().copied().collect()
    }
}

/// The orientation axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// Equal signs across a horizontal long edge.
    HorizontalLongEdge,
    /// Opposite signs across a vertical long edge.
    VerticalLongEdge,
    /// In a short-edged square a lone sign sits at the top or bottom.
    ShortSquare,
    /// The fundamental basis is positive.
    FundamentalPositive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::HorizontalLongEdge => "horizontal long edge",
            Axiom::VerticalLongEdge => "vertical long edge",
            Axiom::ShortSquare => "short-edged square",
            Axiom::FundamentalPositive => "fundamental basis positive",
        })
    }
}

/// A 2-face of the n-cube: two free axes, all other coordinates fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeFace {
    n: u8,
    i: u8,
    j: u8,
    fixed: u32,
}

impl CubeFace {
    /// The face through `t` spanned by coordinates `i < j`.
    pub fn through(t: &Transversal, i: usize, j: usize) -> Self {
        assert!(i < j && j < t.n());
        let free = 1u32 << i | 1u32 << j;
        CubeFace {
            n: t.n() as u8,
            i: i as u8,
            j: j as u8,
            fixed: t.plus_mask() & !free,
        }
    }

    pub fn axes(&self) -> (usize, usize) {
        (self.i as usize, self.j as usize)
    }

    /// Corners in rotational order in the `(e_i, e_j)` plane:
    /// `(-,-), (+,-), (+,+), (-,+)`.
    pub fn corners(&self) -> [Transversal; 4] {
        let (bi, bj) = (1u32 << self.i, 1u32 << self.j);
        let n = self.n as usize;
        [self.fixed, self.fixed | bi, self.fixed | bi | bj, self.fixed | bj]
            .map(|m| Transversal::from_mask_unchecked(n, m))
    }
}

impl fmt::Display for CubeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.corners().iter().map(Transversal::label).collect();
        write!(f, "axes {{{}, {}}} [{}]", self.i + 1, self.j + 1, labels.join(" "))
    }
}

impl Serialize for CubeFace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CubeFace", 2)?;
        st.serialize_field("axes", &[self.i + 1, self.j + 1])?;
        st.serialize_field("corners", &self.corners())?;
        st.end()
    }
}

/// A failed axiom together with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub face: Option<CubeFace>,
    pub bases: Vec<Transversal>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.bases.iter().map(Transversal::label).collect();
        write!(f, "{} fails at {}", self.axiom, labels.join(", "))?;
        if let Some(face) = &self.face {
            write!(f, " in {face}")?;
        }
        Ok(())
    }
}

/// Every cube 2-face that contains at least one basis, in order.
pub fn occupied_cube_faces(m: &LagrangianMatroid) -> BTreeSet<CubeFace> {
    let n = m.n();
    let mut faces = BTreeSet::new();
    for b in m.bases() {
        for i in 0..n {
            for j in i + 1..n {
                faces.insert(CubeFace::through(b, i, j));
            }
        }
    }
    faces
}

/// Long edges of the polytope inside one cube face: diagonals whose ends
/// are bases while at most one of the other two corners is.
pub(crate) fn face_long_edges(present: &[bool; 4]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (a, b, x, y) in [(0, 2, 1, 3), (1, 3, 0, 2)] {
        if present[a] && present[b] && !(present[x] && present[y]) {
            out.push((a, b));
        }
    }
    out
}

pub(crate) fn basis_masks(m: &LagrangianMatroid) -> HashSet<u32> {
    m.bases().iter().map(Transversal::plus_mask).collect()
}

fn require_same_matroid(m: &LagrangianMatroid, rs: &RelativeSigns) -> Result<()> {
    if rs.signs.len() != m.len() || !m.bases().iter().all(|b| rs.signs.contains_key(b)) {
        return Err(Error::InvalidOrientation(
            "signs are defined on a different basis set".into(),
        ));
    }
    Ok(())
}

/// Checks the orientation axioms one cube 2-face at a time; empty result
/// means `rs` is an orientation relative to its fundamental basis.
pub fn validate_orientation(m: &LagrangianMatroid, rs: &RelativeSigns) -> Result<Vec<Violation>> {
    require_same_matroid(m, rs)?;
    let f = rs.fundamental;
    let masks = basis_masks(m);
    let mut out = Vec::new();
    if rs.get(&f) != Some(Sign::Plus) {
        out.push(Violation {
            axiom: Axiom::FundamentalPositive,
            face: None,
            bases: vec![f],
        });
    }
    for face in occupied_cube_faces(m) {
        let corners = face.corners();
        let present = corners.map(|c| masks.contains(&c.plus_mask()));
        for (a, b) in face_long_edges(&present) {
            let (ca, cb) = (corners[a], corners[b]);
            let same = rs.get(&ca) == rs.get(&cb);
            let horizontal = height(&ca, &f) == height(&cb, &f);
            let axiom = match (horizontal, same) {
                (true, false) => Some(Axiom::HorizontalLongEdge),
                (false, true) => Some(Axiom::VerticalLongEdge),
                _ => None,
            };
            if let Some(axiom) = axiom {
                out.push(Violation {
                    axiom,
                    face: Some(face),
                    bases: vec![ca, cb],
                });
            }
        }
        if present.iter().all(|&p| p) {
            let signs = corners.map(|c| rs.get(&c).expect("basis"));
            let plus = signs.iter().filter(|&&s| s == Sign::Plus).count();
            if plus == 1 || plus == 3 {
                let lone = if plus == 1 { Sign::Plus } else { Sign::Minus };
                let odd = corners[signs.iter().position(|&s| s == lone).unwrap()];
                let heights = corners.map(|c| height(&c, &f));
                let h = height(&odd, &f);
                let extreme = h == *heights.iter().min().unwrap() || h == *heights.iter().max().unwrap();
                if !extreme {
                    out.push(Violation {
                        axiom: Axiom::ShortSquare,
                        face: Some(face),
                        bases: corners.to_vec(),
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn is_orientation(m: &LagrangianMatroid, rs: &RelativeSigns) -> Result<bool> {
    Ok(validate_orientation(m, rs)?.is_empty())
}

/// `s(G, A)` over all basis pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignTable {
    n: usize,
    bases: Vec<Transversal>,
    entries: Vec<Sign>,
}

impl SignTable {
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

    fn position(&self, t: &Transversal) -> Option<usize> {
        self.bases.binary_search(t).ok()
    }

    pub fn sign(&self, g: &Transversal, a: &Transversal) -> Option<Sign> {
        let (i, j) = (self.position(g)?, self.position(a)?);
        Some(self.entries[i * self.bases.len() + j])
    }

    /// `s(G, A)` as an integer, 0 when either argument is not a basis.
    pub fn get(&self, g: &Transversal, a: &Transversal) -> i8 {
        self.sign(g, a).map_or(0, Sign::value)
    }

    /// Nested map `G → A → s(G, A)` keyed by labels.
    pub fn rows(&self) -> BTreeMap<Transversal, BTreeMap<Transversal, i8>> {
        self.bases
            .iter()
            .map(|g| (*g, self.bases.iter().map(|a| (*a, self.get(g, a))).collect()))
            .collect()
    }

    /// The row of `g` as relative signs.
    pub fn row(&self, g: &Transversal) -> Result<RelativeSigns> {
        let i = self.position(g).ok_or_else(|| Error::NotABasis(g.label()))?;
        let k = self.bases.len();
        let signs = self
            .bases
            .iter()
            .enumerate()
            .map(|(j, a)| (*a, self.entries[i * k + j]))
            .collect();
        Ok(RelativeSigns { fundamental: *g, signs })
    }
}

/// The table of `s(G, A) = s_F(A)·s_F(G)·(-1)^{|G∖(F∪A)|}` without
/// checking the axioms.
pub fn induced_table(m: &LagrangianMatroid, rs: &RelativeSigns) -> Result<SignTable> {
    require_same_matroid(m, rs)?;
    let f = rs.fundamental.plus_mask();
    let bases = m.bases().to_vec();
    let signs: Vec<Sign> = rs.vector();
    let mut entries = Vec::with_capacity(bases.len() * bases.len());
    for (gi, g) in bases.iter().enumerate() {
        let gm = g.plus_mask();
        for (ai, a) in bases.iter().enumerate() {
            let outside = ((gm ^ f) & (gm ^ a.plus_mask())).count_ones();
            entries.push(signs[ai] * signs[gi] * Sign::parity(outside % 2 == 1));
        }
    }
    Ok(SignTable {
        n: m.n(),
        bases,
        entries,
    })
}

fn first_violation(violations: &[Violation]) -> Error {
    Error::InvalidOrientation(violations[0].to_string())
}

/// Extends a valid relative sign function to the full table.
pub fn extend_signs(m: &LagrangianMatroid, rs: &RelativeSigns) -> Result<SignTable> {
    let violations = validate_orientation(m, rs)?;
    if !violations.is_empty() {
        return Err(first_violation(&violations));
    }
    induced_table(m, rs)
}

/// The row `s(G, ·)` of a table, i.e. the orientation relative to `G`.
pub fn change_fundamental(st: &SignTable, g: &Transversal) -> Result<RelativeSigns> {
    st.row(g)
}

/// Long-edge constraints relative to `f`, as parity union-find.
struct ParityForest {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityForest {
    fn new(k: usize) -> Self {
        ParityForest {
            parent: (0..k).collect(),
            parity: vec![false; k],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Records `sign(a) = sign(b)·(-1)^odd`; false on contradiction.
    fn join(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == odd;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ odd;
        true
    }
}

/// All orientations relative to `f`, ordered by their sign vectors.
pub fn enumerate_relative_orientations(m: &LagrangianMatroid, f: &Transversal) -> Result<Vec<RelativeSigns>> {
    let k = m.len();
    if k > ORIENTATION_GUARD {
        return Err(Error::GuardExceeded {
            what: "basis count for orientation enumeration",
            got: k,
            limit: ORIENTATION_GUARD,
        });
    }
    let fi = m.require_basis(f)?;
    let masks = basis_masks(m);
    let mut forest = ParityForest::new(k);
    for face in occupied_cube_faces(m) {
        let corners = face.corners();
        let present = corners.map(|c| masks.contains(&c.plus_mask()));
        for (a, b) in face_long_edges(&present) {
            let (ca, cb) = (corners[a], corners[b]);
            let vertical = height(&ca, f) != height(&cb, f);
            let (ia, ib) = (m.index_of(&ca).unwrap(), m.index_of(&cb).unwrap());
            if !forest.join(ia, ib, vertical) {
                return Ok(Vec::new());
            }
        }
    }
    let roots: Vec<(usize, bool)> = (0..k).map(|i| forest.find(i)).collect();
    let fixed_root = roots[fi].0;
    let free: Vec<usize> = {
        let set: BTreeSet<usize> = roots.iter().map(|r| r.0).filter(|&r| r != fixed_root).collect();
        set.into_iter().collect()
    };
    let mut out = Vec::new();
    for code in 0u64..(1u64 << free.len()) {
        let root_sign = |r: usize| -> Sign {
            if r == fixed_root {
                // Chosen so that f itself is positive.
                Sign::parity(roots[fi].1)
            } else {
                let pos = free.iter().position(|&x| x == r).unwrap();
                Sign::parity(code >> pos & 1 == 1)
            }
        };
        let values: Vec<Sign> = roots.iter().map(|&(r, p)| root_sign(r) * Sign::parity(p)).collect();
        let rs = RelativeSigns::from_vector(m, *f, &values)?;
        if validate_orientation(m, &rs)?.is_empty() {
            out.push(rs);
        }
    }
    out.sort_by_key(RelativeSigns::vector);
    Ok(out)
}

/// Every orientation of `m` as a full table, seeded at the label-least
/// basis and ordered by that basis's sign vector.
pub fn enumerate_orientations(m: &LagrangianMatroid) -> Result<Vec<SignTable>> {
    let f = m.first_basis();
    enumerate_relative_orientations(m, &f)?
        .iter()
        .map(|rs| induced_table(m, rs))
        .collect()
}

/// The orientation `s_F(A) = (-1)^{h(A)/2}` of an even matroid, with `F`
/// the label-least basis.
pub fn canonical_even_orientation(m: &LagrangianMatroid) -> Result<SignTable> {
    if !m.is_even() {
        return Err(Error::NotEven);
    }
    let f = m.first_basis();
    let rs = RelativeSigns::from_fn(m, f, |a| Sign::parity(height(a, &f) / 2 % 2 == 1))?;
    extend_signs(m, &rs)
}

/// First signed permutation (in enumeration order) carrying `m1` onto
/// `m2`, and `s1` onto `s2` when both tables are given.
pub fn are_isomorphic(
    m1: &LagrangianMatroid,
    s1: Option<&SignTable>,
    m2: &LagrangianMatroid,
    s2: Option<&SignTable>,
) -> Result<Option<SignedPermutation>> {
    if m1.n() != m2.n() || m1.len() != m2.len() {
        return Ok(None);
    }
    let oriented = match (s1, s2) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => None,
        _ => {
            return Err(Error::InvalidOrientation(
                "both or neither matroid must carry a sign table".into(),
            ))
        }
    };
    for w in enumerate_orderings(m1.n())? {
        let image: Vec<Transversal> = m1.bases().iter().map(|b| w.apply_transversal(b)).collect();
        if !image.iter().all(|t| m2.contains(t)) {
            continue;
        }
        if let Some((a, b)) = oriented {
            let preserved = m1.bases().iter().zip(&image).all(|(x, wx)| {
                m1.bases()
                    .iter()
                    .zip(&image)
                    .all(|(y, wy)| a.get(x, y) == b.get(wx, wy))
            });
            if !preserved {
                continue;
            }
        }
        return Ok(Some(w));
    }
    Ok(None)
}

/// Triples `(G, H, A)` where `s(G,A) = s(H,A)·s(H,G)·(-1)^{|G∖(H∪A)|}` fails.
pub fn cocycle_failures(st: &SignTable) -> Vec<(Transversal, Transversal, Transversal)> {
    let mut out = Vec::new();
    for g in st.bases() {
        for h in st.bases() {
            for a in st.bases() {
                let outside = g.count_outside(h, a) % 2 == 1;
                let rhs = st.get(h, a) * st.get(h, g) * Sign::parity(outside).value();
                if st.get(g, a) != rhs {
                    out.push((*g, *h, *a));
                }
            }
        }
    }
    out
}

/// Pairs where `s(A,B)·s(B,A) = (-1)^{|A∖B|}` fails.
pub fn reciprocity_failures(st: &SignTable) -> Vec<(Transversal, Transversal)> {
    let mut out = Vec::new();
    for a in st.bases() {
        for b in st.bases() {
            let expected = Sign::parity((a.n() - a.overlap(b)) % 2 == 1).value();
            if st.get(a, b) * st.get(b, a) != expected {
                out.push((*a, *b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::enumerate_lagrangian_matroids;

    const FIG1: &str = "1*2*3* 12*3* 1*23* 1*2*3 123* 12*3";
    const FIG2: &str = "1*2*3* 123* 12*3 1*23";
    const FIG3: &str = "1*23 12*3 123* 123";

    fn t(s: &str) -> Transversal {
        Transversal::parse_inferred(s).unwrap()
    }

    fn m(s: &str) -> LagrangianMatroid {
        LagrangianMatroid::parse(s).unwrap()
    }

    fn rs(m: &LagrangianMatroid, f: &str, minus: &[&str]) -> RelativeSigns {
        let minus: Vec<Transversal> = minus.iter().map(|s| t(s)).collect();
        RelativeSigns::from_fn(m, t(f), |b| if minus.contains(b) { Sign::Minus } else { Sign::Plus }).unwrap()
    }

    /// All 2^(k-1) assignments with `s(F) = +1`, filtered by the axioms.
    fn brute_orientations(m: &LagrangianMatroid, f: &Transversal) -> Vec<RelativeSigns> {
        let fi = m.index_of(f).unwrap();
        let k = m.len();
        let mut out = Vec::new();
        for code in 0u64..(1u64 << k) {
            if code >> fi & 1 == 1 {
                continue;
            }
            let values: Vec<Sign> = (0..k).map(|i| Sign::parity(code >> i & 1 == 1)).collect();
            let r = RelativeSigns::from_vector(m, *f, &values).unwrap();
            if validate_orientation(m, &r).unwrap().is_empty() {
                out.push(r);
            }
        }
        out.sort_by_key(RelativeSigns::vector);
        out
    }

    #[test]
    fn sign_arithmetic() {
        assert_eq!(Sign::Plus * Sign::Minus, Sign::Minus);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(-Sign::Plus, Sign::Minus);
        assert!(Sign::Minus < Sign::Plus);
        assert_eq!(Sign::from_value(-1), Some(Sign::Minus));
        assert_eq!(Sign::from_value(0), None);
    }

    #[test]
    fn validate_examples() {
        let fig3 = m(FIG3);
        assert!(validate_orientation(&fig3, &rs(&fig3, "123", &[])).unwrap().is_empty());
        let bad = validate_orientation(&fig3, &rs(&fig3, "123", &["1*23"])).unwrap();
        assert!(!bad.is_empty());
        assert!(bad.iter().all(|v| v.axiom == Axiom::HorizontalLongEdge));
        assert!(bad.iter().all(|v| v.bases.contains(&t("1*23"))));
        let fig2 = m(FIG2);
        assert!(
            validate_orientation(&fig2, &rs(&fig2, "1*2*3*", &["123*", "12*3", "1*23"]))
                .unwrap()
                .is_empty()
        );
        let vert = validate_orientation(&fig2, &rs(&fig2, "1*2*3*", &[])).unwrap();
        assert!(vert.iter().any(|v| v.axiom == Axiom::VerticalLongEdge));
        let neg = validate_orientation(&fig3, &rs(&fig3, "123", &["123", "1*23", "12*3", "123*"])).unwrap();
        assert_eq!(neg.len(), 1);
        assert_eq!(neg[0].axiom, Axiom::FundamentalPositive);
    }

    #[test]
    fn short_square_axiom() {
        let sq = m("12 1*2 12* 1*2*");
        let f = "1*2*";
        // Lone sign at a middle vertex is forbidden, at the bottom allowed.
        let v = validate_orientation(&sq, &rs(&sq, f, &["12*"])).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].axiom, Axiom::ShortSquare);
        assert!(validate_orientation(&sq, &rs(&sq, f, &["12"])).unwrap().is_empty());
        assert!(validate_orientation(&sq, &rs(&sq, f, &["12", "1*2", "12*"]))
            .unwrap()
            .is_empty());
        assert_eq!(brute_orientations(&sq, &t(f)).len(), 6);
    }

    #[test]
    fn rejects_foreign_domain() {
        let fig3 = m(FIG3);
        let fig2 = m(FIG2);
        let other = rs(&fig2, "1*2*3*", &[]);
        assert!(validate_orientation(&fig3, &other).is_err());
        assert!(RelativeSigns::from_vector(&fig3, t("123"), &[Sign::Plus]).is_err());
        assert!(matches!(
            RelativeSigns::from_fn(&fig3, t("1*2*3*"), |_| Sign::Plus),
            Err(Error::NotABasis(_))
        ));
    }

    #[test]
    fn extension_examples() {
        let fig1 = m(FIG1);
        let st = extend_signs(&fig1, &rs(&fig1, "1*2*3*", &[])).unwrap();
        assert_eq!(st.get(&t("12*3*"), &t("123*")), 1);
        assert_eq!(change_fundamental(&st, &t("1*2*3*")).unwrap(), rs(&fig1, "1*2*3*", &[]));
        for a in fig1.bases() {
            for b in fig1.bases() {
                if a.distance(b) == 1 {
                    assert_eq!(st.get(a, b) * st.get(b, a), -1);
                }
            }
        }
        assert_eq!(st.get(&t("123"), &t("1*2*3*")), 0);
        assert!(extend_signs(&fig1, &rs(&fig1, "1*2*3*", &["123*"])).is_err());
    }

    #[test]
    fn change_of_fundamental_basis() {
        let fig3 = m(FIG3);
        let st = extend_signs(&fig3, &rs(&fig3, "123", &[])).unwrap();
        let at = change_fundamental(&st, &t("1*23")).unwrap();
        assert_eq!(at, rs(&fig3, "1*23", &["123", "12*3", "123*"]));
        for g in fig3.bases() {
            let row = change_fundamental(&st, g).unwrap();
            assert!(validate_orientation(&fig3, &row).unwrap().is_empty());
            assert_eq!(extend_signs(&fig3, &row).unwrap(), st);
        }
        assert!(change_fundamental(&st, &t("1*2*3*")).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_orientations(&m(FIG3)).unwrap().len(), 2);
        assert_eq!(enumerate_orientations(&m(FIG2)).unwrap().len(), 1);
        assert_eq!(enumerate_orientations(&m("1 1*")).unwrap().len(), 2);
        assert_eq!(enumerate_orientations(&m("1")).unwrap().len(), 1);
    }

    #[test]
    fn pruned_enumeration_matches_brute_force() {
        for n in 1..=3 {
            for mat in enumerate_lagrangian_matroids(n).unwrap() {
                for f in mat.bases() {
                    assert_eq!(
                        enumerate_relative_orientations(&mat, f).unwrap(),
                        brute_orientations(&mat, f),
                        "{:?} from {f}",
                        mat.labels()
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_independent_of_seed() {
        for mat in enumerate_lagrangian_matroids(3).unwrap() {
            let reference: BTreeSet<Vec<Sign>> = enumerate_orientations(&mat)
                .unwrap()
                .iter()
                .map(|st| st.entries.clone())
                .collect();
            for f in mat.bases() {
                let seeded: BTreeSet<Vec<Sign>> = enumerate_relative_orientations(&mat, f)
                    .unwrap()
                    .iter()
                    .map(|r| induced_table(&mat, r).unwrap().entries)
                    .collect();
                assert_eq!(seeded, reference);
            }
        }
    }

    #[test]
    fn even_orientation() {
        let fig2 = m(FIG2);
        let st = canonical_even_orientation(&fig2).unwrap();
        let f = t("1*2*3*");
        for b in fig2.bases() {
            assert_eq!(st.get(&f, b), if *b == f { 1 } else { -1 });
        }
        assert_eq!(enumerate_orientations(&fig2).unwrap(), vec![st]);
        let hyp = canonical_even_orientation(&m("12 1*2*")).unwrap();
        assert_eq!(hyp.get(&t("1*2*"), &t("12")), -1);
        let single = canonical_even_orientation(&m("12*3")).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.get(&t("12*3"), &t("12*3")), 1);
        assert!(matches!(canonical_even_orientation(&m(FIG1)), Err(Error::NotEven)));
    }

    #[test]
    fn isomorphism_examples() {
        let fig3 = m(FIG3);
        let left = extend_signs(&fig3, &rs(&fig3, "123", &["1*23", "12*3", "123*"])).unwrap();
        let right = extend_signs(&fig3, &rs(&fig3, "123", &[])).unwrap();
        let id = are_isomorphic(&fig3, None, &fig3, None).unwrap().unwrap();
        assert_eq!(id, SignedPermutation::identity(3));
        assert_eq!(
            are_isomorphic(&fig3, Some(&left), &fig3, Some(&left)).unwrap(),
            Some(SignedPermutation::identity(3))
        );
        assert_eq!(are_isomorphic(&fig3, Some(&left), &fig3, Some(&right)).unwrap(), None);
        let shifted = fig3.apply(&SignedPermutation::new(vec![1, 2, 0], vec![true, false, false]).unwrap());
        let w = are_isomorphic(&fig3, None, &shifted, None).unwrap().unwrap();
        assert_eq!(fig3.apply(&w), shifted);
        assert_eq!(are_isomorphic(&fig3, None, &m(FIG2), None).unwrap(), None);
    }

    #[test]
    fn produced_tables_are_cocycles() {
        for n in 1..=3 {
            for mat in enumerate_lagrangian_matroids(n).unwrap() {
                for st in enumerate_orientations(&mat).unwrap() {
                    assert!(cocycle_failures(&st).is_empty());
                    assert!(reciprocity_failures(&st).is_empty());
                }
            }
        }
    }

    #[test]
    fn invalid_assignment_breaks_cocycle_rows() {
        // The induced table of a non-orientation still has the cocycle form,
        // but its other rows fail the axioms.
        let fig3 = m(FIG3);
        let bad = rs(&fig3, "123", &["1*23"]);
        let table = induced_table(&fig3, &bad).unwrap();
        assert!(cocycle_failures(&table).is_empty());
        assert!(fig3
            .bases()
            .iter()
            .all(|g| !validate_orientation(&fig3, &table.row(g).unwrap()).unwrap().is_empty()));
    }
}
