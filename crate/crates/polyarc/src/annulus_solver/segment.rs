use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::delaunay::MeshKind;
use crate::geometry_core::{Rational, RationalPoint};

/// Voronoi cell reference: which diagram, which site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SiteTag {
    pub diagram: MeshKind,
    pub site: u32,
}

impl SiteTag {
    pub fn closest(site: u32) -> Self {
        SiteTag { diagram: MeshKind::Closest, site }
    }
    pub fn farthest(site: u32) -> Self {
        SiteTag { diagram: MeshKind::Farthest, site }
    }
}

pub type TagSet = BTreeSet<SiteTag>;

/// Symmetric difference in place: tags present an odd number of times
/// survive.
pub fn xor_into(acc: &mut TagSet, other: &TagSet) {
    for t in other {
        if !acc.remove(t) {
            acc.insert(*t);
        }
    }
}

/// A cell-boundary segment with the cells it borders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedSegment {
    pub p0: RationalPoint,
    pub p1: RationalPoint,
    pub tags: TagSet,
    /// Set for the single-index edges that close unbounded cells.
    pub synthetic: bool,
}

impl IndexedSegment {
    pub fn new(p0: RationalPoint, p1: RationalPoint, tags: impl IntoIterator<Item = SiteTag>) -> Self {
        IndexedSegment { p0, p1, tags: tags.into_iter().collect(), synthetic: false }
    }

    pub fn closing(p0: RationalPoint, p1: RationalPoint, tag: SiteTag) -> Self {
        IndexedSegment { p0, p1, tags: [tag].into_iter().collect(), synthetic: true }
    }

    pub fn with_points(&self, p0: RationalPoint, p1: RationalPoint) -> Self {
        IndexedSegment { p0, p1, tags: self.tags.clone(), synthetic: self.synthetic }
    }

    pub fn is_degenerate(&self) -> bool {
        self.p0 == self.p1
    }

    /// Point at parameter t on p0→p1.
    pub fn at(&self, t: &Rational) -> RationalPoint {
        let d = &self.p1 - &self.p0;
        &self.p0 + &d.scale(t)
    }

    /// Endpoints ordered lexicographically.
    pub fn ordered(&self) -> (&RationalPoint, &RationalPoint) {
        match self.p0.cmp_xy(&self.p1) {
            Ordering::Greater => (&self.p1, &self.p0),
            _ => (&self.p0, &self.p1),
        }
    }

    pub fn has_kind(&self, kind: MeshKind) -> bool {
        self.tags.iter().any(|t| t.diagram == kind)
    }

    pub fn sites_of(&self, kind: MeshKind) -> impl Iterator<Item = u32> + '_ {
        self.tags.iter().filter(move |t| t.diagram == kind).map(|t| t.site)
    }
}

/// Total order on rational points by x, then y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointKey(pub RationalPoint);

impl Ord for PointKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp_xy(&other.0)
    }
}

impl PartialOrd for PointKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
