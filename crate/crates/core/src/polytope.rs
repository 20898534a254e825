//! Matroid polytopes inside the cube `[-1, 1]^n`: edges, 2-faces, directed
//! short edges, the balance condition and sign propagation.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{int, null_space, rank, zero_in_convex_hull, Matrix, Rational};
use crate::ground::Transversal;
use crate::matroid::{height, LagrangianMatroid};
use crate::orient::{induced_table, validate_orientation, RelativeSigns, Sign, SignTable};

pub fn embed_vertex(a: &Transversal) -> Vec<i32> {
    a.point()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// One coordinate flipped; length 2.
    Short,
    /// Two coordinates flipped; length 2√2.
    Long,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub a: Transversal,
    pub b: Transversal,
    pub kind: EdgeKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FaceKind {
    #[serde(rename = "sSquare")]
    ShortSquare,
    #[serde(rename = "lSquare")]
    LongSquare,
    #[serde(rename = "nsRect")]
    Rectangle,
    #[serde(rename = "iTri")]
    IsoscelesTriangle,
    #[serde(rename = "eqTri")]
    EquilateralTriangle,
}

impl FaceKind {
    pub const ALL: [FaceKind; 5] = [
        FaceKind::ShortSquare,
        FaceKind::LongSquare,
        FaceKind::Rectangle,
        FaceKind::IsoscelesTriangle,
        FaceKind::EquilateralTriangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FaceKind::ShortSquare => "sSquare",
            FaceKind::LongSquare => "lSquare",
            FaceKind::Rectangle => "nsRect",
            FaceKind::IsoscelesTriangle => "iTri",
            FaceKind::EquilateralTriangle => "eqTri",
        }
    }
}

/// A 2-face; `members` are in boundary order, starting at the label-least
/// vertex and continuing to its larger neighbour.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub kind: FaceKind,
    /// Coordinates (1-based) on which the members differ.
    pub axes: Vec<usize>,
    pub members: Vec<Transversal>,
}

impl Face {
    /// Consecutive boundary pairs, closing the cycle.
    pub fn boundary(&self) -> impl Iterator<Item = (Transversal, Transversal)> + '_ {
        let k = self.members.len();
        (0..k).map(move |i| (self.members[i], self.members[(i + 1) % k]))
    }
}

#[derive(Clone, Debug)]
pub struct PolytopeSkeleton {
    matroid: LagrangianMatroid,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    lookup: HashMap<(Transversal, Transversal), usize>,
    adjacency: Vec<Vec<usize>>,
}

impl PartialEq for PolytopeSkeleton {
    fn eq(&self, other: &Self) -> bool {
        self.matroid == other.matroid && self.edges == other.edges && self.faces == other.faces
    }
}

impl PolytopeSkeleton {
    pub fn n(&self) -> usize {
        self.matroid.n()
    }

    pub fn matroid(&self) -> &LagrangianMatroid {
        &self.matroid
    }

    pub fn vertices(&self) -> &[Transversal] {
        self.matroid.bases()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edge_between(&self, x: &Transversal, y: &Transversal) -> Option<&Edge> {
        self.edge_index(x, y).map(|i| &self.edges[i])
    }

    fn edge_index(&self, x: &Transversal, y: &Transversal) -> Option<usize> {
        let key = if x < y { (*x, *y) } else { (*y, *x) };
        self.lookup.get(&key).copied()
    }

    /// Neighbours of `x` in the skeleton, in label order.
    pub fn neighbours(&self, x: &Transversal) -> Vec<Transversal> {
        let Some(i) = self.matroid.index_of(x) else {
            return Vec::new();
        };
        let mut out: Vec<Transversal> = self.adjacency[i]
            .iter()
            .map(|&e| {
                let edge = &self.edges[e];
                if edge.a == *x {
                    edge.b
                } else {
                    edge.a
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn face_histogram(&self) -> Vec<(FaceKind, usize)> {
        FaceKind::ALL
            .iter()
            .map(|&k| (k, self.faces.iter().filter(|f| f.kind == k).count()))
            .collect()
    }

    /// Numbers of short and long edges.
    pub fn edge_counts(&self) -> (usize, usize) {
        let short = self.edges.iter().filter(|e| e.kind == EdgeKind::Short).count();
        (short, self.edges.len() - short)
    }
}

/// Edges by the adjacency criterion: every short exchange, and a long
/// exchange unless both intermediate transversals are bases.
pub fn compute_edges(m: &LagrangianMatroid) -> Vec<Edge> {
    let masks: HashSet<u32> = m.bases().iter().map(Transversal::plus_mask).collect();
    let mut out = Vec::new();
    for (i, a) in m.bases().iter().enumerate() {
        for b in &m.bases()[i + 1..] {
            let diff = a.difference_mask(b);
            let kind = match diff.count_ones() {
                1 => EdgeKind::Short,
                2 => {
                    let low = diff & diff.wrapping_neg();
                    let both =
                        masks.contains(&(a.plus_mask() ^ low)) && masks.contains(&(a.plus_mask() ^ (diff ^ low)));
                    if both {
                        continue;
                    }
                    EdgeKind::Long
                }
                _ => continue,
            };
            out.push(Edge { a: *a, b: *b, kind });
        }
    }
    out
}

fn rational_point(t: &Transversal) -> Vec<Rational> {
    t.point().into_iter().map(|v| int(v as i64)).collect()
}

fn difference(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Whether `subset` is exactly the vertex set of a face of
/// `conv(vertices)`: some linear functional is constant on `subset` and
/// strictly smaller on every other vertex.
pub fn is_face(vertices: &[Transversal], subset: &[Transversal]) -> bool {
    let Some(s0) = subset.first() else {
        return false;
    };
    let base = rational_point(s0);
    let others: Vec<&Transversal> = vertices.iter().filter(|v| !subset.contains(v)).collect();
    if others.is_empty() {
        return true;
    }
    let normals = if subset.len() == 1 {
        (0..s0.n())
            .map(|i| (0..s0.n()).map(|j| int((i == j) as i64)).collect())
            .collect()
    } else {
        let rows: Vec<Vec<Rational>> = subset[1..]
            .iter()
            .map(|s| difference(&rational_point(s), &base))
            .collect();
        null_space(&Matrix::from_rows(rows).expect("rectangular"))
    };
    if normals.is_empty() {
        return false;
    }
    let projected: Vec<Vec<Rational>> = others
        .iter()
        .map(|u| {
            let d = difference(&rational_point(u), &base);
            normals
                .iter()
                .map(|c: &Vec<Rational>| c.iter().zip(&d).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    !zero_in_convex_hull(&projected)
}

/// True edges of the convex hull of an arbitrary set of cube vertices, as
/// label-ordered pairs.
pub fn hull_edges(vertices: &[Transversal]) -> Vec<(Transversal, Transversal)> {
    let mut sorted = vertices.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = Vec::new();
    for (i, a) in sorted.iter().enumerate() {
        for b in &sorted[i + 1..] {
            if is_face(&sorted, &[*a, *b]) {
                out.push((*a, *b));
            }
        }
    }
    out
}

fn in_plane(v: &[Rational], a: &[Rational], b: &[Rational], u: &[Rational]) -> bool {
    let rows = vec![difference(a, v), difference(b, v), difference(u, v)];
    rank(&Matrix::from_rows(rows).expect("rectangular")) <= 2
}

fn classify(members: &[Transversal], kinds: &[EdgeKind]) -> Option<FaceKind> {
    let short = kinds.iter().filter(|&&k| k == EdgeKind::Short).count();
    match (members.len(), short) {
        (3, 2) => Some(FaceKind::IsoscelesTriangle),
        (3, 0) => Some(FaceKind::EquilateralTriangle),
        (4, 4) => Some(FaceKind::ShortSquare),
        (4, 0) => Some(FaceKind::LongSquare),
        (4, 2) if kinds[0] != kinds[1] => Some(FaceKind::Rectangle),
        _ => None,
    }
}

/// Builds edges and all 2-faces. Candidate planes come from pairs of edges
/// at a vertex; each is accepted only if its vertex set is a face.
pub fn skeleton(m: &LagrangianMatroid) -> Result<PolytopeSkeleton> {
    let edges = compute_edges(m);
    let mut lookup = HashMap::new();
    let mut adjacency = vec![Vec::new(); m.len()];
    for (i, e) in edges.iter().enumerate() {
        lookup.insert((e.a, e.b), i);
        adjacency[m.index_of(&e.a).unwrap()].push(i);
        adjacency[m.index_of(&e.b).unwrap()].push(i);
    }
    let mut sk = PolytopeSkeleton {
        matroid: m.clone(),
        edges,
        faces: Vec::new(),
        lookup,
        adjacency,
    };
    sk.faces = scan_faces(&sk)?;
    Ok(sk)
}

fn scan_faces(sk: &PolytopeSkeleton) -> Result<Vec<Face>> {
    let bases = sk.vertices();
    let points: Vec<Vec<Rational>> = bases.iter().map(rational_point).collect();
    let mut seen: HashSet<Vec<Transversal>> = HashSet::new();
    let mut faces = Vec::new();
    for (vi, v) in bases.iter().enumerate() {
        let nbrs = sk.neighbours(v);
        for (x, a) in nbrs.iter().enumerate() {
            for b in &nbrs[x + 1..] {
                let (pa, pb) = (
                    &points[sk.matroid.index_of(a).unwrap()],
                    &points[sk.matroid.index_of(b).unwrap()],
                );
                let members: Vec<Transversal> = bases
                    .iter()
                    .zip(&points)
                    .filter(|(_, pu)| in_plane(&points[vi], pa, pb, pu))
                    .map(|(u, _)| *u)
                    .collect();
                if !seen.insert(members.clone()) {
                    continue;
                }
                if !is_face(bases, &members) {
                    continue;
                }
                faces.push(order_face(sk, &members)?);
            }
        }
    }
    faces.sort_by(|p, q| p.members.cmp(&q.members));
    Ok(faces)
}

fn order_face(sk: &PolytopeSkeleton, members: &[Transversal]) -> Result<Face> {
    let set: BTreeSet<Transversal> = members.iter().copied().collect();
    let inside =
        |x: &Transversal| -> Vec<Transversal> { sk.neighbours(x).into_iter().filter(|y| set.contains(y)).collect() };
    let start = *set.iter().next().unwrap();
    let describe = || members.iter().map(Transversal::label).collect::<Vec<_>>().join(" ");
    let first = inside(&start);
    if first.len() != 2 {
        return Err(Error::Internal(format!("face {} is not a polygon", describe())));
    }
    let mut cycle = vec![start, first[1]];
    while cycle.len() < set.len() {
        let cur = *cycle.last().unwrap();
        let prev = cycle[cycle.len() - 2];
        let next: Vec<Transversal> = inside(&cur).into_iter().filter(|y| *y != prev).collect();
        if next.len() != 1 || cycle.contains(&next[0]) {
            return Err(Error::Internal(format!("face {} is not a polygon", describe())));
        }
        cycle.push(next[0]);
    }
    if !inside(cycle.last().unwrap()).contains(&start) {
        return Err(Error::Internal(format!("face {} does not close", describe())));
    }
    let k = cycle.len();
    let kinds: Vec<EdgeKind> = (0..k)
        .map(|i| sk.edge_between(&cycle[i], &cycle[(i + 1) % k]).unwrap().kind)
        .collect();
    let kind = classify(&cycle, &kinds)
        .ok_or_else(|| Error::Internal(format!("face {} has no recognised type", describe())))?;
    let varying = cycle.iter().fold(0u32, |acc, t| acc | t.difference_mask(&cycle[0]));
    let axes = (0..sk.n()).filter(|&i| varying >> i & 1 == 1).map(|i| i + 1).collect();
    Ok(Face {
        kind,
        axes,
        members: cycle,
    })
}

/// A skeleton with every short edge directed.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedSkeleton {
    base: PolytopeSkeleton,
    /// Per edge: `Some(true)` for `a → b`, `Some(false)` for `b → a`,
    /// `None` on long edges.
    forward: Vec<Option<bool>>,
}

impl OrientedSkeleton {
    /// Directs the short edges (in edge order) by `forward`.
    pub fn with_directions(base: PolytopeSkeleton, forward: &[bool]) -> Result<Self> {
        let shorts = base.edges.iter().filter(|e| e.kind == EdgeKind::Short).count();
        if forward.len() != shorts {
            return Err(Error::Dimension(format!(
                "{} directions for {shorts} short edges",
                forward.len()
            )));
        }
        let mut it = forward.iter();
        let forward = base
            .edges
            .iter()
            .map(|e| (e.kind == EdgeKind::Short).then(|| *it.next().unwrap()))
            .collect();
        Ok(OrientedSkeleton { base, forward })
    }

    pub fn skeleton(&self) -> &PolytopeSkeleton {
        &self.base
    }

    /// Whether the edge between `x` and `y` is directed `x → y`; `None` for
    /// long edges and non-edges.
    pub fn directed(&self, x: &Transversal, y: &Transversal) -> Option<bool> {
        let i = self.base.edge_index(x, y)?;
        let fwd = self.forward[i]?;
        Some(fwd == (self.base.edges[i].a == *x))
    }

    /// `(from, to)` of a short edge.
    pub fn direction_of(&self, edge: &Edge) -> Option<(Transversal, Transversal)> {
        let i = self.base.edge_index(&edge.a, &edge.b)?;
        self.forward[i].map(|f| if f { (edge.a, edge.b) } else { (edge.b, edge.a) })
    }

    pub fn reverse(&mut self, x: &Transversal, y: &Transversal) -> Result<()> {
        let i = self
            .base
            .edge_index(x, y)
            .ok_or_else(|| Error::Dimension(format!("{x} and {y} are not adjacent")))?;
        match self.forward[i].as_mut() {
            Some(f) => {
                *f = !*f;
                Ok(())
            }
            None => Err(Error::Dimension(format!("{x}–{y} is a long edge"))),
        }
    }

    /// Directions of the short edges in edge order.
    pub fn directions(&self) -> Vec<bool> {
        self.forward.iter().filter_map(|f| *f).collect()
    }
}

fn direct_by_table(base: PolytopeSkeleton, st: &SignTable) -> OrientedSkeleton {
    let forward = base
        .edges
        .iter()
        .map(|e| (e.kind == EdgeKind::Short).then(|| st.get(&e.a, &e.b) == 1))
        .collect();
    OrientedSkeleton { base, forward }
}

/// Directs each short edge `A → B` iff `s(A, B) = +1`.
pub fn orient_skeleton(m: &LagrangianMatroid, st: &SignTable) -> Result<OrientedSkeleton> {
    if st.bases() != m.bases() {
        return Err(Error::InvalidOrientation(
            "sign table belongs to a different matroid".into(),
        ));
    }
    let row = st.row(&m.first_basis())?;
    let violations = validate_orientation(m, &row)?;
    if let Some(v) = violations.first() {
        return Err(Error::InvalidOrientation(v.to_string()));
    }
    Ok(direct_by_table(skeleton(m)?, st))
}

/// Directions induced by any sign assignment relative to `F`, valid or
/// not.
pub fn induced_skeleton(base: &PolytopeSkeleton, rs: &RelativeSigns) -> Result<OrientedSkeleton> {
    let st = induced_table(&base.matroid, rs)?;
    Ok(direct_by_table(base.clone(), &st))
}

/// A face whose short edges are not balanced around its boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceViolation {
    pub face: Face,
    pub with_walk: usize,
    pub against_walk: usize,
}

/// Faces with unequal numbers of short edges directed each way around.
pub fn check_balance(os: &OrientedSkeleton) -> Vec<BalanceViolation> {
    let mut out = Vec::new();
    for face in &os.base.faces {
        let (mut with, mut against) = (0, 0);
        for (x, y) in face.boundary() {
            match os.directed(&x, &y) {
                Some(true) => with += 1,
                Some(false) => against += 1,
                None => {}
            }
        }
        if with != against {
            out.push(BalanceViolation {
                face: face.clone(),
                with_walk: with,
                against_walk: against,
            });
        }
    }
    out
}

/// Inducing relative to `f`: a vertical long edge, or a short edge directed
/// downwards.
pub fn is_inducing(os: &OrientedSkeleton, x: &Transversal, y: &Transversal, f: &Transversal) -> Option<bool> {
    let edge = os.base.edge_between(x, y)?;
    let (hx, hy) = (height(x, f), height(y, f));
    Some(match edge.kind {
        EdgeKind::Long => hx != hy,
        EdgeKind::Short => {
            let (from, to) = os.direction_of(edge)?;
            height(&from, f) > height(&to, f)
        }
    })
}

/// Breadth-first sign propagation from `s(F) = +1`, flipping across
/// inducing edges. The result is checked against the axioms.
pub fn signs_from_skeleton(os: &OrientedSkeleton, f: &Transversal) -> Result<RelativeSigns> {
    let m = &os.base.matroid;
    let fi = m.require_basis(f)?;
    let k = m.len();
    let mut sign: Vec<Option<Sign>> = vec![None; k];
    let mut parent: Vec<Option<usize>> = vec![None; k];
    sign[fi] = Some(Sign::Plus);
    let mut queue = VecDeque::from([fi]);
    let path = |parent: &[Option<usize>], mut i: usize| {
        let mut p = vec![m.bases()[i].label()];
        while let Some(j) = parent[i] {
            p.push(m.bases()[j].label());
            i = j;
        }
        p
    };
    while let Some(ui) = queue.pop_front() {
        let u = m.bases()[ui];
        for v in os.base.neighbours(&u) {
            let vi = m.index_of(&v).unwrap();
            let flip = is_inducing(os, &u, &v, f).unwrap();
            let expected = if flip { -sign[ui].unwrap() } else { sign[ui].unwrap() };
            match sign[vi] {
                None => {
                    sign[vi] = Some(expected);
                    parent[vi] = Some(ui);
                    queue.push_back(vi);
                }
                Some(s) if s != expected => {
                    let mut left = path(&parent, ui);
                    left.reverse();
                    let right = path(&parent, vi);
                    return Err(Error::Contradiction(format!(
                        "{} | {}",
                        left.join(" - "),
                        right.join(" - ")
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let values: Vec<Sign> = sign
        .into_iter()
        .collect::<Option<Vec<Sign>>>()
        .ok_or_else(|| Error::Internal("polytope skeleton is disconnected".into()))?;
    let rs = RelativeSigns::from_vector(m, *f, &values)?;
    if let Some(v) = validate_orientation(m, &rs)?.first() {
        return Err(Error::InvalidOrientation(v.to_string()));
    }
    Ok(rs)
}

#[derive(Serialize)]
struct VertexView {
    basis: Transversal,
    point: Vec<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign_rel: Option<i8>,
}

#[derive(Serialize)]
struct EdgeView {
    a: Transversal,
    b: Transversal,
    kind: EdgeKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    direction: Option<[Transversal; 2]>,
}

#[derive(Serialize)]
struct SkeletonView<'a> {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    fundamental: Option<Transversal>,
    vertices: Vec<VertexView>,
    edges: Vec<EdgeView>,
    faces: &'a [Face],
}

fn view<'a>(sk: &'a PolytopeSkeleton, oriented: Option<(&OrientedSkeleton, &RelativeSigns)>) -> SkeletonView<'a> {
    SkeletonView {
        n: sk.n(),
        fundamental: oriented.map(|(_, rs)| rs.fundamental()),
        vertices: sk
            .vertices()
            .iter()
            .map(|b| VertexView {
                basis: *b,
                point: embed_vertex(b),
                sign_rel: oriented.and_then(|(_, rs)| rs.get(b)).map(Sign::value),
            })
            .collect(),
        edges: sk
            .edges()
            .iter()
            .map(|e| EdgeView {
                a: e.a,
                b: e.b,
                kind: e.kind,
                direction: oriented.and_then(|(os, _)| os.direction_of(e)).map(|(x, y)| [x, y]),
            })
            .collect(),
        faces: sk.faces(),
    }
}

/// JSON document for a skeleton, with directions and relative signs when
/// `oriented` is given.
pub fn to_json(sk: &PolytopeSkeleton, oriented: Option<(&OrientedSkeleton, &RelativeSigns)>) -> serde_json::Value {
    serde_json::to_value(view(sk, oriented)).expect("serializable")
}

/// Graphviz rendering: short edges as arcs (when directed), long edges
/// undirected and dashed.
pub fn to_dot(sk: &PolytopeSkeleton, oriented: Option<&OrientedSkeleton>) -> String {
    let mut out = String::from("digraph polytope {\n");
    for face in sk.faces() {
        let labels: Vec<String> = face.members.iter().map(Transversal::label).collect();
        let _ = writeln!(out, "  // {}: {}", face.kind.name(), labels.join(" "));
    }
    for v in sk.vertices() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for e in sk.edges() {
        match (e.kind, oriented.and_then(|os| os.direction_of(e))) {
            (EdgeKind::Short, Some((x, y))) => {
                let _ = writeln!(out, "  \"{x}\" -> \"{y}\";");
            }
            (EdgeKind::Short, None) => {
                let _ = writeln!(out, "  \"{}\" -> \"{}\" [dir=none];", e.a, e.b);
            }
            (EdgeKind::Long, _) => {
                let _ = writeln!(out, "  \"{}\" -> \"{}\" [dir=none, style=dashed];", e.a, e.b);
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::enumerate_lagrangian_matroids;
    use crate::orient::{enumerate_orientations, extend_signs};

    const FIG1: &str = "1*2*3* 12*3* 1*23* 1*2*3 123* 12*3";
    const FIG2: &str = "1*2*3* 123* 12*3 1*23";
    const FIG3: &str = "1*23 12*3 123* 123";
    const LSQUARE: &str = "1*2*3*4* 123*4* 1*2*34 1234";

    fn t(s: &str) -> Transversal {
        Transversal::parse_inferred(s).unwrap()
    }

    fn m(s: &str) -> LagrangianMatroid {
        LagrangianMatroid::parse(s).unwrap()
    }

    fn kinds(sk: &PolytopeSkeleton) -> Vec<FaceKind> {
        let mut k: Vec<FaceKind> = sk.faces().iter().map(|f| f.kind).collect();
        k.sort();
        k
    }

    fn fig3_signs(mat: &LagrangianMatroid, all_plus: bool) -> RelativeSigns {
        let f = t("123");
        RelativeSigns::from_fn(mat, f, |b| if *b == f || all_plus { Sign::Plus } else { Sign::Minus }).unwrap()
    }

    #[test]
    fn embedding() {
        assert_eq!(embed_vertex(&t("123")), vec![1, 1, 1]);
        assert_eq!(embed_vertex(&t("1*2*3*")), vec![-1, -1, -1]);
        assert_eq!(embed_vertex(&t("12*3")), vec![1, -1, 1]);
    }

    #[test]
    fn mixed_faces_skeleton() {
        let sk = skeleton(&m(FIG1)).unwrap();
        assert_eq!(sk.edge_between(&t("12*3"), &t("1*2*3")).unwrap().kind, EdgeKind::Short);
        assert_eq!(sk.edge_between(&t("12*3"), &t("123*")).unwrap().kind, EdgeKind::Long);
        let k = kinds(&sk);
        assert!(k.contains(&FaceKind::ShortSquare));
        assert!(k.contains(&FaceKind::Rectangle));
        assert!(k.contains(&FaceKind::IsoscelesTriangle));
        let starred_two = sk
            .faces()
            .iter()
            .find(|f| f.kind == FaceKind::ShortSquare && f.members.iter().all(|b| b.sign(1) < 0));
        assert!(starred_two.is_some());
    }

    #[test]
    fn even_tetrahedron_skeleton() {
        let sk = skeleton(&m(FIG2)).unwrap();
        assert_eq!(sk.edges().len(), 6);
        assert!(sk.edges().iter().all(|e| e.kind == EdgeKind::Long));
        assert_eq!(kinds(&sk), vec![FaceKind::EquilateralTriangle; 4]);
    }

    #[test]
    fn full_square_has_no_diagonals() {
        let sk = skeleton(&m("12 1*2 12* 1*2*")).unwrap();
        assert_eq!(sk.edges().len(), 4);
        assert!(sk.edges().iter().all(|e| e.kind == EdgeKind::Short));
        assert_eq!(kinds(&sk), vec![FaceKind::ShortSquare]);
    }

    #[test]
    fn long_square() {
        let sk = skeleton(&m(LSQUARE)).unwrap();
        assert_eq!(sk.faces().len(), 1);
        let face = &sk.faces()[0];
        assert_eq!(face.kind, FaceKind::LongSquare);
        let labels: Vec<String> = face.members.iter().map(Transversal::label).collect();
        assert_eq!(labels, vec!["1*2*3*4*", "123*4*", "1234", "1*2*34"]);
        assert_eq!(face.axes, vec![1, 2, 3, 4]);
    }

    #[test]
    fn all_ones_pair_faces() {
        let sk = skeleton(&m(FIG3)).unwrap();
        let mut expected = vec![FaceKind::IsoscelesTriangle; 3];
        expected.push(FaceKind::EquilateralTriangle);
        expected.sort();
        assert_eq!(kinds(&sk), expected);
    }

    #[test]
    fn face_test_examples() {
        let cube = Transversal::all(3).unwrap();
        assert!(is_face(&cube, &[t("123"), t("12*3")]));
        assert!(!is_face(&cube, &[t("123"), t("1*2*3")]));
        assert!(is_face(&cube, &[t("123"), t("12*3"), t("1*2*3"), t("1*23")]));
        assert!(!is_face(&cube, &[t("123"), t("12*3*"), t("1*2*3")]));
        assert!(is_face(&cube, &[t("123")]));
        assert!(!is_face(&cube, &cube[..7]));
        assert!(is_face(&cube, &cube));
        assert!(!is_face(&cube, &[]));
    }

    #[test]
    fn hull_edges_agree_with_criterion_on_matroids() {
        for n in 1..=3 {
            for mat in enumerate_lagrangian_matroids(n).unwrap() {
                let by_rule: Vec<(Transversal, Transversal)> = compute_edges(&mat).iter().map(|e| (e.a, e.b)).collect();
                assert_eq!(hull_edges(mat.bases()), by_rule, "{:?}", mat.labels());
            }
        }
    }

    #[test]
    fn census_faces_are_classified() {
        for n in 1..=3 {
            for mat in enumerate_lagrangian_matroids(n).unwrap() {
                let sk = skeleton(&mat).unwrap();
                for e in sk.edges() {
                    let len2: i32 = embed_vertex(&e.a)
                        .iter()
                        .zip(embed_vertex(&e.b))
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum();
                    assert_eq!(len2, if e.kind == EdgeKind::Short { 4 } else { 8 });
                }
            }
        }
    }

    #[test]
    fn all_ones_pair_orientations_and_balance() {
        let mat = m(FIG3);
        let right = extend_signs(&mat, &fig3_signs(&mat, true)).unwrap();
        let left = extend_signs(&mat, &fig3_signs(&mat, false)).unwrap();
        let f = t("123");
        let os_right = orient_skeleton(&mat, &right).unwrap();
        let os_left = orient_skeleton(&mat, &left).unwrap();
        for x in ["1*23", "12*3", "123*"] {
            assert_eq!(os_right.directed(&f, &t(x)), Some(true));
            assert_eq!(os_left.directed(&f, &t(x)), Some(false));
        }
        assert!(check_balance(&os_right).is_empty());
        assert!(check_balance(&os_left).is_empty());
        let mut broken = os_right.clone();
        broken.reverse(&f, &t("1*23")).unwrap();
        let bad = check_balance(&broken);
        assert_eq!(bad.len(), 2);
        assert!(bad
            .iter()
            .all(|v| v.face.kind == FaceKind::IsoscelesTriangle && v.face.members.contains(&t("1*23"))));
        assert!(signs_from_skeleton(&broken, &f).is_err());
    }

    #[test]
    fn propagation_examples() {
        let mat = m(FIG3);
        let right = extend_signs(&mat, &fig3_signs(&mat, true)).unwrap();
        let os = orient_skeleton(&mat, &right).unwrap();
        let at_123 = signs_from_skeleton(&os, &t("123")).unwrap();
        assert!(at_123.vector().iter().all(|&s| s == Sign::Plus));
        let at = signs_from_skeleton(&os, &t("1*23")).unwrap();
        for x in ["123", "12*3", "123*"] {
            assert_eq!(at.get(&t(x)), Some(Sign::Minus));
        }
        let none = skeleton(&m(FIG2)).unwrap();
        let os2 = OrientedSkeleton::with_directions(none, &[]).unwrap();
        assert!(check_balance(&os2).is_empty());
    }

    #[test]
    fn round_trips_on_census() {
        for n in 1..=3 {
            for mat in enumerate_lagrangian_matroids(n).unwrap() {
                for st in enumerate_orientations(&mat).unwrap() {
                    let os = orient_skeleton(&mat, &st).unwrap();
                    assert!(check_balance(&os).is_empty());
                    for f in mat.bases() {
                        let rs = signs_from_skeleton(&os, f).unwrap();
                        assert_eq!(rs, st.row(f).unwrap());
                        let again = orient_skeleton(&mat, &extend_signs(&mat, &rs).unwrap()).unwrap();
                        assert_eq!(again, os);
                    }
                }
            }
        }
    }

    #[test]
    fn exports() {
        let mat = m(FIG3);
        let right = extend_signs(&mat, &fig3_signs(&mat, true)).unwrap();
        let os = orient_skeleton(&mat, &right).unwrap();
        let rs = right.row(&t("123")).unwrap();
        let json = to_json(os.skeleton(), Some((&os, &rs)));
        assert_eq!(json["n"], 3);
        assert_eq!(json["vertices"].as_array().unwrap().len(), 4);
        let short = json["edges"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["kind"] == "short")
            .unwrap();
        assert_eq!(short["direction"][0], "123");
        assert!(json["faces"].as_array().unwrap().iter().any(|f| f["kind"] == "eqTri"));
        let dot = to_dot(os.skeleton(), Some(&os));
        assert!(dot.contains("\"123\" -> \"1*23\";"));
        assert!(dot.contains("style=dashed"));
        assert!(dot.contains("// eqTri"));
    }
}
