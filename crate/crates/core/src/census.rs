//! Exhaustive census of small Lagrangian matroids: orientation counts and
//! face statistics.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::matroid::enumerate_lagrangian_matroids;
use crate::orient::enumerate_orientations;
use crate::polytope::{skeleton, FaceKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    /// Non-empty collections of transversals examined.
    pub collections: u64,
    pub matroids: usize,
    pub even_matroids: usize,
    pub orientations: usize,
    pub unorientable: usize,
    /// Number of orientations → number of matroids with that many.
    pub orientations_per_matroid: BTreeMap<usize, usize>,
    pub short_edges: usize,
    pub long_edges: usize,
    pub faces: BTreeMap<&'static str, usize>,
}

pub fn census(n: usize) -> Result<CensusReport> {
    let matroids = enumerate_lagrangian_matroids(n)?;
    let mut report = CensusReport {
        n,
        collections: (1u64 << (1u64 << n)) - 1,
        matroids: matroids.len(),
        even_matroids: 0,
        orientations: 0,
        unorientable: 0,
        orientations_per_matroid: BTreeMap::new(),
        short_edges: 0,
        long_edges: 0,
        faces: FaceKind::ALL.iter().map(|k| (k.name(), 0)).collect(),
    };
    for m in &matroids {
        report.even_matroids += usize::from(m.is_even());
        let count = enumerate_orientations(m)?.len();
        report.orientations += count;
        report.unorientable += usize::from(count == 0);
        *report.orientations_per_matroid.entry(count).or_default() += 1;
        let sk = skeleton(m)?;
        let (short, long) = sk.edge_counts();
        report.short_edges += short;
        report.long_edges += long;
        for (kind, c) in sk.face_histogram() {
            *report.faces.get_mut(kind.name()).unwrap() += c;
        }
    }
    Ok(report)
}
