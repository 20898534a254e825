//! Ground set `J = {1..n} ∪ {1*..n*}` with its involution, admissible sets,
//! transversals (vertices of the n-cube) and the signed-permutation group
//! acting on them.
//!
//! Coordinates are 0-based internally: bit `i` of a mask refers to the
//! underlying index `i + 1`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground size representable by the 32-bit masks.
pub const MAX_GROUND: usize = 32;

/// Largest ground size accepted by [`enumerate_orderings`] (2^8 · 8! orderings).
pub const ORDERING_GUARD: usize = 8;

/// An element `i` or `i*` of the ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundIndex {
    underlying: u8,
    starred: bool,
}

impl GroundIndex {
    /// `underlying` is 1-based.
    pub fn new(underlying: usize, starred: bool) -> Self {
        assert!(
            (1..=MAX_GROUND).contains(&underlying),
            "ground index {underlying} out of range"
        );
        GroundIndex {
            underlying: underlying as u8,
            starred,
        }
    }

    pub fn plain(underlying: usize) -> Self {
        Self::new(underlying, false)
    }

    pub fn starred(underlying: usize) -> Self {
        Self::new(underlying, true)
    }

    /// The involution `i <-> i*`.
    pub fn star(self) -> Self {
        GroundIndex {
            underlying: self.underlying,
            starred: !self.starred,
        }
    }

    pub fn underlying(self) -> usize {
        self.underlying as usize
    }

    pub fn is_starred(self) -> bool {
        self.starred
    }

    /// Zero-based coordinate of the underlying index.
    pub fn coord(self) -> usize {
        self.underlying as usize - 1
    }

    /// Position in the base order `n* < ... < 1* < 1 < ... < n`.
    pub fn base_rank(self, n: usize) -> usize {
        if self.starred {
            n - self.underlying()
        } else {
            n - 1 + self.underlying()
        }
    }
}

impl fmt::Display for GroundIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "{}*", self.underlying)
        } else {
            write!(f, "{}", self.underlying)
        }
    }
}

/// True iff no pair `{i, i*}` is contained in `members`.
pub fn is_admissible(members: &[GroundIndex]) -> bool {
    let mut plus = 0u64;
    let mut minus = 0u64;
    for x in members {
        let bit = 1u64 << x.coord();
        if x.starred {
            minus |= bit;
        } else {
            plus |= bit;
        }
    }
    plus & minus == 0
}

fn check_ground_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::Dimension(format!("ground size {n} outside 1..={MAX_GROUND}")));
    }
    Ok(())
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Splits basis notation into ground elements. Comma-separated tokens are
/// used for multi-digit indices; otherwise every digit is its own index.
fn tokenize(text: &str) -> Result<Vec<GroundIndex>> {
    let text = text.trim();
    let mut out = Vec::new();
    if text.is_empty() {
        return Ok(out);
    }
    if text.contains(',') {
        for raw in text.split(',') {
            let tok = raw.trim();
            let (digits, starred) = match tok.strip_suffix('*') {
                Some(d) => (d, true),
                None => (tok, false),
            };
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad basis token {tok:?} in {text:?}")));
            }
            let idx: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad basis token {tok:?}")))?;
            if idx == 0 || idx > MAX_GROUND {
                return Err(Error::Parse(format!("index {idx} out of range in {text:?}")));
            }
            out.push(GroundIndex::new(idx, starred));
        }
        return Ok(out);
    }
    for c in text.chars() {
        match c {
            '1'..='9' => out.push(GroundIndex::new(c as usize - '0' as usize, false)),
            '*' => match out.last_mut() {
                Some(last) if !last.starred => last.starred = true,
                _ => return Err(Error::Parse(format!("misplaced '*' in {text:?}"))),
            },
            c if c.is_whitespace() => {}
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {text:?}"))),
        }
    }
    Ok(out)
}

fn format_members(n: usize, members: impl Iterator<Item = GroundIndex>) -> String {
    let toks: Vec<String> = members.map(|x| x.to_string()).collect();
    if n > 9 {
        toks.join(",")
    } else {
        toks.concat()
    }
}

/// An admissible subset of `J`, stored as two disjoint masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleSet {
    n: u8,
    plus: u32,
    minus: u32,
}

impl AdmissibleSet {
    pub fn from_masks(n: usize, plus: u32, minus: u32) -> Result<Self> {
        check_ground_size(n)?;
        let full = full_mask(n);
        if (plus | minus) & !full != 0 {
            return Err(Error::Dimension(format!("members outside ground size {n}")));
        }
        if plus & minus != 0 {
            let i = (plus & minus).trailing_zeros() + 1;
            return Err(Error::NotAdmissible(format!("contains both {i} and {i}*")));
        }
        Ok(AdmissibleSet {
            n: n as u8,
            plus,
            minus,
        })
    }

    pub fn new(n: usize, members: impl IntoIterator<Item = GroundIndex>) -> Result<Self> {
        check_ground_size(n)?;
        let mut plus = 0u32;
        let mut minus = 0u32;
        for x in members {
            if x.underlying() > n {
                return Err(Error::Dimension(format!("index {x} exceeds n = {n}")));
            }
            let bit = 1u32 << x.coord();
            if x.starred {
                minus |= bit;
            } else {
                plus |= bit;
            }
        }
        Self::from_masks(n, plus, minus)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_masks(n, 0, 0)
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let toks = tokenize(text)?;
        for t in &toks {
            if t.underlying() > n {
                return Err(Error::Parse(format!(
                    "index {} out of range for n = {n}",
                    t.underlying()
                )));
            }
        }
        let set = Self::new(n, toks.iter().copied()).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
        if set.len() != toks.len() {
            return Err(Error::Parse(format!("{text:?} repeats an element")));
        }
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        (self.plus | self.minus).count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn plus_mask(&self) -> u32 {
        self.plus
    }

    pub fn minus_mask(&self) -> u32 {
        self.minus
    }

    pub fn contains(&self, x: GroundIndex) -> bool {
        if x.underlying() > self.n() {
            return false;
        }
        let bit = 1u32 << x.coord();
        if x.starred {
            self.minus & bit != 0
        } else {
            self.plus & bit != 0
        }
    }

    /// Members in increasing underlying index.
    pub fn members(&self) -> Vec<GroundIndex> {
        (0..self.n())
            .filter_map(|i| {
                let bit = 1u32 << i;
                if self.plus & bit != 0 {
                    Some(GroundIndex::plain(i + 1))
                } else if self.minus & bit != 0 {
                    Some(GroundIndex::starred(i + 1))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn starred_count(&self) -> usize {
        self.minus.count_ones() as usize
    }

    pub fn is_transversal(&self) -> bool {
        (self.plus | self.minus) == full_mask(self.n())
    }

    pub fn to_transversal(&self) -> Option<Transversal> {
        self.is_transversal().then_some(Transversal {
            n: self.n,
            plus: self.plus,
        })
    }

    pub fn label(&self) -> String {
        format_members(self.n(), self.members().into_iter())
    }
}

impl fmt::Display for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Ord for AdmissibleSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.label().cmp(&other.label()).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for AdmissibleSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for AdmissibleSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// An admissible n-subset of `J`: exactly one of `i`, `i*` for every `i`.
/// Equivalently a vertex of the cube `[-1, 1]^n`; bit `i` of the mask is
/// set iff coordinate `i` is `+1`.
///
/// Ordering is lexicographic on the basis-notation string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transversal {
    n: u8,
    plus: u32,
}

impl Transversal {
    pub fn new(n: usize, plus: u32) -> Result<Self> {
        check_ground_size(n)?;
        if plus & !full_mask(n) != 0 {
            return Err(Error::Dimension(format!("mask {plus:#b} exceeds n = {n}")));
        }
        Ok(Transversal { n: n as u8, plus })
    }

    pub(crate) fn from_mask_unchecked(n: usize, plus: u32) -> Self {
        debug_assert!(n <= MAX_GROUND && plus & !full_mask(n) == 0);
        Transversal { n: n as u8, plus }
    }

    /// Every transversal of ground size `n`, indexed by mask.
    pub fn all(n: usize) -> Result<Vec<Transversal>> {
        check_ground_size(n)?;
        if n > 20 {
            return Err(Error::GuardExceeded {
                what: "transversal listing",
                got: n,
                limit: 20,
            });
        }
        Ok((0..(1u32 << n))
            .map(|m| Transversal::from_mask_unchecked(n, m))
            .collect())
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let n = signs.len();
        check_ground_size(n)?;
        let mut plus = 0u32;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => plus |= 1 << i,
                -1 => {}
                _ => return Err(Error::Parse(format!("sign {s} at coordinate {} is not ±1", i + 1))),
            }
        }
        Ok(Transversal { n: n as u8, plus })
    }

    pub fn all_starred(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn all_plain(n: usize) -> Result<Self> {
        Self::new(n, full_mask(n))
    }

    /// Parses basis notation such as `12*3` (or `1,2*,10` when n > 9).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        check_ground_size(n).map_err(|e| Error::Parse(e.to_string()))?;
        let toks = tokenize(text)?;
        let mut seen = 0u32;
        let mut plus = 0u32;
        for t in toks {
            if t.underlying() > n {
                return Err(Error::Parse(format!(
                    "index {} out of range for n = {n} in {text:?}",
                    t.underlying()
                )));
            }
            let bit = 1u32 << t.coord();
            if seen & bit != 0 {
                return Err(Error::Parse(format!("index {} repeated in {text:?}", t.underlying())));
            }
            seen |= bit;
            if !t.starred {
                plus |= bit;
            }
        }
        let missing = full_mask(n) & !seen;
        if missing != 0 {
            return Err(Error::Parse(format!(
                "index {} unassigned in {text:?}",
                missing.trailing_zeros() + 1
            )));
        }
        Ok(Transversal { n: n as u8, plus })
    }

    /// Parses basis notation, taking `n` to be the number of tokens.
    pub fn parse_inferred(text: &str) -> Result<Self> {
        let n = tokenize(text)?.len();
        if n == 0 {
            return Err(Error::Parse(format!("empty basis {text:?}")));
        }
        Self::parse(text, n)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn plus_mask(&self) -> u32 {
        self.plus
    }

    /// `+1` if `i + 1` is a member, `-1` if `(i + 1)*` is.
    pub fn sign(&self, coord: usize) -> i8 {
        assert!(coord < self.n());
        if self.plus >> coord & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.n()).map(|i| self.sign(i)).collect()
    }

    pub fn contains(&self, x: GroundIndex) -> bool {
        x.underlying() <= self.n() && (self.sign(x.coord()) == 1) != x.starred
    }

    /// Short exchange `A Δ {i, i*}` on coordinate `coord`.
    pub fn flip(&self, coord: usize) -> Self {
        assert!(coord < self.n());
        Transversal {
            n: self.n,
            plus: self.plus ^ (1 << coord),
        }
    }

    pub fn flip_mask(&self, mask: u32) -> Self {
        debug_assert!(mask & !full_mask(self.n()) == 0);
        Transversal {
            n: self.n,
            plus: self.plus ^ mask,
        }
    }

    /// Mask of coordinates where the two transversals differ.
    pub fn difference_mask(&self, other: &Transversal) -> u32 {
        self.plus ^ other.plus
    }

    /// Number of coordinates where the two differ (`|A Δ B| / 2`).
    pub fn distance(&self, other: &Transversal) -> usize {
        (self.plus ^ other.plus).count_ones() as usize
    }

    /// `|A ∩ B|`.
    pub fn overlap(&self, other: &Transversal) -> usize {
        self.n() - self.distance(other)
    }

    /// `|A ∖ (B ∪ C)|`.
    pub fn count_outside(&self, b: &Transversal, c: &Transversal) -> usize {
        ((self.plus ^ b.plus) & (self.plus ^ c.plus)).count_ones() as usize
    }

    pub fn starred_count(&self) -> usize {
        self.n() - self.plus.count_ones() as usize
    }

    pub fn to_set(&self) -> AdmissibleSet {
        AdmissibleSet {
            n: self.n,
            plus: self.plus,
            minus: full_mask(self.n()) & !self.plus,
        }
    }

    pub fn members(&self) -> Vec<GroundIndex> {
        (0..self.n())
            .map(|i| GroundIndex::new(i + 1, self.plus >> i & 1 == 0))
            .collect()
    }

    pub fn label(&self) -> String {
        format_members(self.n(), self.members().into_iter())
    }

    /// Cube embedding `e_A`.
    pub fn point(&self) -> Vec<i32> {
        self.signs().into_iter().map(i32::from).collect()
    }
}

impl fmt::Display for Transversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Ord for Transversal {
    // Equivalent to comparing labels: at the first differing coordinate the
    // starred token sorts first ('*' precedes digits and ','), except on the
    // last coordinate where the unstarred label is a proper prefix.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.n.cmp(&other.n) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = self.plus ^ other.plus;
        if diff == 0 {
            return Ordering::Equal;
        }
        let i = diff.trailing_zeros() as usize;
        let self_plain = self.plus >> i & 1 == 1;
        let last = i + 1 == self.n();
        match (self_plain, last) {
            (true, false) | (false, true) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

impl PartialOrd for Transversal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Transversal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Outcome of a Gale-order comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GaleOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// An element `w` of the hyperoctahedral group: `w(i) = perm[i]`, starred
/// iff `flips[i]`, and `w(i*) = w(i)*` (all 0-based).
///
/// It induces the admissible ordering `x ≤^w y  ⇔  w⁻¹x ≤ w⁻¹y` on `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<u8>,
    flips: Vec<bool>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, flips: Vec<bool>) -> Result<Self> {
        let n = perm.len();
        check_ground_size(n)?;
        if flips.len() != n {
            return Err(Error::Dimension("perm and flips differ in length".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(SignedPermutation {
            perm: perm.into_iter().map(|p| p as u8).collect(),
            flips,
        })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n as u8).collect(),
            flips: vec![false; n],
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|&p| p as usize).collect()
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn apply(&self, x: GroundIndex) -> GroundIndex {
        let c = x.coord();
        GroundIndex::new(self.perm[c] as usize + 1, x.starred ^ self.flips[c])
    }

    pub fn apply_inverse(&self, x: GroundIndex) -> GroundIndex {
        let c = self
            .perm
            .iter()
            .position(|&p| p as usize == x.coord())
            .expect("index within ground size");
        GroundIndex::new(c + 1, x.starred ^ self.flips[c])
    }

    pub fn apply_transversal(&self, t: &Transversal) -> Transversal {
        let mut plus = 0u32;
        for i in 0..self.n() {
            let plain = (t.plus >> i & 1 == 1) ^ self.flips[i];
            if plain {
                plus |= 1 << self.perm[i];
            }
        }
        Transversal::from_mask_unchecked(self.n(), plus)
    }

    pub fn apply_set(&self, s: &AdmissibleSet) -> AdmissibleSet {
        AdmissibleSet::new(self.n(), s.members().into_iter().map(|x| self.apply(x)))
            .expect("signed permutations preserve admissibility")
    }

    /// Position of `x` in the induced ordering `≤^w`.
    pub fn rank(&self, x: GroundIndex) -> usize {
        self.apply_inverse(x).base_rank(self.n())
    }

    /// Ranks of all ground elements: entry `i` is the rank of `i + 1`,
    /// entry `n + i` the rank of `(i + 1)*`.
    pub fn rank_table(&self) -> Vec<usize> {
        let n = self.n();
        let mut table = vec![0; 2 * n];
        for c in 0..n {
            let img = self.perm[c] as usize;
            let plain_rank = GroundIndex::new(c + 1, self.flips[c]).base_rank(n);
            table[img] = plain_rank;
            table[n + img] = 2 * n - 1 - plain_rank;
        }
        table
    }

    pub fn compare(&self, x: GroundIndex, y: GroundIndex) -> Ordering {
        self.rank(x).cmp(&self.rank(y))
    }

    /// Signed-permutation notation, e.g. `[2*, 1, 3]` for the images of 1..n.
    pub fn label(&self) -> String {
        let imgs: Vec<String> = (1..=self.n())
            .map(|i| self.apply(GroundIndex::plain(i)).to_string())
            .collect();
        format!("[{}]", imgs.join(", "))
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// All `2^n · n!` elements of the hyperoctahedral group, lexicographic in
/// `(perm, flips)`.
pub fn enumerate_orderings(n: usize) -> Result<Orderings> {
    if n == 0 || n > ORDERING_GUARD {
        return Err(Error::GuardExceeded {
            what: "ordering enumeration ground size",
            got: n,
            limit: ORDERING_GUARD,
        });
    }
    Ok(Orderings {
        n,
        perm: Some((0..n as u8).collect()),
        code: 0,
    })
}

/// Iterator returned by [`enumerate_orderings`].
#[derive(Clone, Debug)]
pub struct Orderings {
    n: usize,
    perm: Option<Vec<u8>>,
    code: u32,
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl Iterator for Orderings {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        let perm = self.perm.as_mut()?;
        let n = self.n;
        let flips = (0..n).map(|i| self.code >> (n - 1 - i) & 1 == 1).collect();
        let out = SignedPermutation {
            perm: perm.clone(),
            flips,
        };
        self.code += 1;
        if self.code == 1 << n {
            self.code = 0;
            if !next_permutation(perm) {
                self.perm = None;
            }
        }
        Some(out)
    }
}

fn sorted_ranks(table: &[usize], s: &AdmissibleSet) -> Vec<usize> {
    let n = s.n();
    let mut r: Vec<usize> = s
        .members()
        .into_iter()
        .map(|x| {
            if x.is_starred() {
                table[n + x.coord()]
            } else {
                table[x.coord()]
            }
        })
        .collect();
    r.sort_unstable();
    r
}

/// Gale (componentwise) comparison of two equal-size admissible sets under
/// the ordering induced by `w`.
pub fn compare_sets(w: &SignedPermutation, a: &AdmissibleSet, b: &AdmissibleSet) -> Result<GaleOrder> {
    if a.n() != b.n() || a.n() != w.n() {
        return Err(Error::Dimension("ground sizes differ".into()));
    }
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "cannot compare sets of sizes {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a == b {
        return Ok(GaleOrder::Equal);
    }
    let table = w.rank_table();
    Ok(gale_from_ranks(&sorted_ranks(&table, a), &sorted_ranks(&table, b)))
}

pub(crate) fn gale_from_ranks(a: &[usize], b: &[usize]) -> GaleOrder {
    let le = a.iter().zip(b).all(|(x, y)| x <= y);
    let ge = a.iter().zip(b).all(|(x, y)| x >= y);
    match (le, ge) {
        (true, true) => GaleOrder::Equal,
        (true, false) => GaleOrder::Less,
        (false, true) => GaleOrder::Greater,
        (false, false) => GaleOrder::Incomparable,
    }
}

pub(crate) fn set_ranks(table: &[usize], s: &AdmissibleSet) -> Vec<usize> {
    sorted_ranks(table, s)
}
