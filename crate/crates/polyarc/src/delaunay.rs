//! Divide-and-conquer Delaunay triangulations, closest and farthest.
//!
//! Construction works on a quad-edge arena. Splits alternate between the
//! two axes (whichever extent is longer) and a horizontal split is merged in
//! the frame rotated by −90°, where the lower half plays the role of the
//! left half. Predicates are rotation invariant, so only the split key and
//! the hull-extreme search depend on the frame.
//!
//! The farthest triangulation runs the same merge on the convex hull in
//! hull order, with the in-circle sign flipped.
//!
//! Finished meshes are exported as per-vertex counterclockwise neighbor
//! lists in which an [`Neighbor::Infinite`] entry separates consecutive
//! hull neighbors.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::geometry_core::{
    circumcenter, convex_hull, incircle, incircle_rational, int_rational, invert_rational, orientation,
    orientation_rational, IntPoint, Rational, RationalPoint, Sign,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DelaunayError {
    #[error("no points")]
    NoPoints,
    #[error("duplicate point at index {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("input not in convex position")]
    NotConvex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeshKind {
    Closest,
    Farthest,
}

/// Split policy for the unordered builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MedianSelect {
    /// Randomized quickselect with a fixed-seed pivot generator.
    #[default]
    Quickselect,
    /// Worst-case linear selection from the standard library.
    Deterministic,
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub median: MedianSelect,
    /// Worker threads for the recursion; 1 disables forking.
    pub threads: usize,
    /// Subproblems smaller than this are never forked.
    pub fork_threshold: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { median: MedianSelect::Quickselect, threads: 1, fork_threshold: 2048 }
    }
}

/// Point type the builders can triangulate.
pub trait PlanarPoint: Clone + Send + Sync {
    fn orient(a: &Self, b: &Self, c: &Self) -> Sign;
    /// Closest-kind in-circle sign for counterclockwise a, b, c.
    fn in_circle(a: &Self, b: &Self, c: &Self, d: &Self) -> Sign;
    fn cmp_xy(a: &Self, b: &Self) -> Ordering;
    fn cmp_yx(a: &Self, b: &Self) -> Ordering;
    /// Whether the x extent of the subset is at least its y extent.
    fn wider_than_tall(points: &[Self], ids: &[u32]) -> bool;
}

impl PlanarPoint for IntPoint {
    fn orient(a: &Self, b: &Self, c: &Self) -> Sign {
        orientation(*a, *b, *c)
    }
    fn in_circle(a: &Self, b: &Self, c: &Self, d: &Self) -> Sign {
        incircle(*a, *b, *c, *d)
    }
    fn cmp_xy(a: &Self, b: &Self) -> Ordering {
        (a.x, a.y).cmp(&(b.x, b.y))
    }
    fn cmp_yx(a: &Self, b: &Self) -> Ordering {
        (a.y, -(a.x as i128)).cmp(&(b.y, -(b.x as i128)))
    }
    fn wider_than_tall(points: &[Self], ids: &[u32]) -> bool {
        let (mut x0, mut x1, mut y0, mut y1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        for &i in ids {
            let p = points[i as usize];
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        (x1 as i128 - x0 as i128) >= (y1 as i128 - y0 as i128)
    }
}

impl PlanarPoint for RationalPoint {
    fn orient(a: &Self, b: &Self, c: &Self) -> Sign {
        orientation_rational(a, b, c)
    }
    fn in_circle(a: &Self, b: &Self, c: &Self, d: &Self) -> Sign {
        incircle_rational(a, b, c, d)
    }
    fn cmp_xy(a: &Self, b: &Self) -> Ordering {
        a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y))
    }
    fn cmp_yx(a: &Self, b: &Self) -> Ordering {
        a.y.cmp(&b.y).then_with(|| b.x.cmp(&a.x))
    }
    fn wider_than_tall(points: &[Self], ids: &[u32]) -> bool {
        let first = &points[ids[0] as usize];
        let (mut x0, mut x1, mut y0, mut y1) = (&first.x, &first.x, &first.y, &first.y);
        for &i in ids {
            let p = &points[i as usize];
            if p.x < *x0 {
                x0 = &p.x;
            }
            if p.x > *x1 {
                x1 = &p.x;
            }
            if p.y < *y0 {
                y0 = &p.y;
            }
            if p.y > *y1 {
                y1 = &p.y;
            }
        }
        (x1 - x0) >= (y1 - y0)
    }
}

/// Merge frame: `Vertical` splits by x (then y); `Horizontal` splits by the
/// rotated key (y, −x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Frame {
    Vertical,
    Horizontal,
}

fn frame_cmp<P: PlanarPoint>(frame: Frame, a: &P, b: &P) -> Ordering {
    match frame {
        Frame::Vertical => P::cmp_xy(a, b),
        Frame::Horizontal => P::cmp_yx(a, b),
    }
}

type EdgeId = u32;
const DEAD: u32 = u32::MAX;

/// Quad-edge arena. Edge `e` of quad `q` is `4q + r`; r = 0, 2 are the
/// primal directions, r = 1, 3 the duals.
#[derive(Debug, Default, Clone)]
struct QuadArena {
    next: Vec<EdgeId>,
    org: Vec<u32>,
}

#[inline]
fn rot(e: EdgeId) -> EdgeId {
    (e & !3) | (e.wrapping_add(1) & 3)
}
#[inline]
fn rot_inv(e: EdgeId) -> EdgeId {
    (e & !3) | (e.wrapping_add(3) & 3)
}
#[inline]
fn sym(e: EdgeId) -> EdgeId {
    e ^ 2
}

impl QuadArena {
    fn with_capacity(quads: usize) -> Self {
        QuadArena { next: Vec::with_capacity(4 * quads), org: Vec::with_capacity(2 * quads) }
    }

    #[inline]
    fn onext(&self, e: EdgeId) -> EdgeId {
        self.next[e as usize]
    }
    #[inline]
    fn oprev(&self, e: EdgeId) -> EdgeId {
        rot(self.onext(rot(e)))
    }
    #[inline]
    fn lnext(&self, e: EdgeId) -> EdgeId {
        rot(self.onext(rot_inv(e)))
    }
    #[inline]
    fn lprev(&self, e: EdgeId) -> EdgeId {
        sym(self.onext(e))
    }
    #[inline]
    fn rprev(&self, e: EdgeId) -> EdgeId {
        self.onext(sym(e))
    }
    #[inline]
    fn org(&self, e: EdgeId) -> u32 {
        debug_assert!(e & 1 == 0);
        self.org[((e >> 2) * 2 + ((e >> 1) & 1)) as usize]
    }
    #[inline]
    fn dest(&self, e: EdgeId) -> u32 {
        self.org(sym(e))
    }
    fn is_live(&self, q: usize) -> bool {
        self.org[2 * q] != DEAD
    }
    fn quads(&self) -> usize {
        self.org.len() / 2
    }

    fn make_edge(&mut self, a: u32, b: u32) -> EdgeId {
        let e = self.next.len() as EdgeId;
        self.next.extend_from_slice(&[e, e + 3, e + 2, e + 1]);
        self.org.extend_from_slice(&[a, b]);
        e
    }

    fn splice(&mut self, a: EdgeId, b: EdgeId) {
        let alpha = rot(self.onext(a));
        let beta = rot(self.onext(b));
        self.next.swap(a as usize, b as usize);
        self.next.swap(alpha as usize, beta as usize);
    }

    fn connect(&mut self, a: EdgeId, b: EdgeId) -> EdgeId {
        let e = self.make_edge(self.dest(a), self.org(b));
        let la = self.lnext(a);
        self.splice(e, la);
        self.splice(sym(e), b);
        e
    }

    fn delete(&mut self, e: EdgeId) {
        let op = self.oprev(e);
        self.splice(e, op);
        let se = sym(e);
        let ops = self.oprev(se);
        self.splice(se, ops);
        let q = (e >> 2) as usize;
        self.org[2 * q] = DEAD;
        self.org[2 * q + 1] = DEAD;
    }

    /// Appends another arena, returning the edge offset applied to it.
    fn absorb(&mut self, other: QuadArena) -> EdgeId {
        let offset = self.next.len() as EdgeId;
        self.next.extend(other.next.into_iter().map(|e| e + offset));
        self.org.extend(other.org);
        offset
    }
}

struct Builder<'a, P: PlanarPoint> {
    pts: &'a [P],
    kind: MeshKind,
    arena: QuadArena,
    rng: u64,
    median: MedianSelect,
}

impl<'a, P: PlanarPoint> Builder<'a, P> {
    fn new(pts: &'a [P], kind: MeshKind, median: MedianSelect, capacity: usize) -> Self {
        Builder { pts, kind, arena: QuadArena::with_capacity(capacity), rng: 0x9E37_79B9_7F4A_7C15, median }
    }

    #[inline]
    fn pt(&self, v: u32) -> &P {
        &self.pts[v as usize]
    }
    #[inline]
    fn ccw(&self, a: u32, b: u32, c: u32) -> bool {
        P::orient(self.pt(a), self.pt(b), self.pt(c)) == Sign::Positive
    }
    #[inline]
    fn rightof(&self, x: u32, e: EdgeId) -> bool {
        self.ccw(x, self.arena.dest(e), self.arena.org(e))
    }
    #[inline]
    fn leftof(&self, x: u32, e: EdgeId) -> bool {
        self.ccw(x, self.arena.org(e), self.arena.dest(e))
    }
    /// Kind-adjusted in-circle: true when d invalidates triangle a, b, c.
    #[inline]
    fn in_circle(&self, a: u32, b: u32, c: u32, d: u32) -> bool {
        let s = P::in_circle(self.pt(a), self.pt(b), self.pt(c), self.pt(d));
        match self.kind {
            MeshKind::Closest => s == Sign::Positive,
            MeshKind::Farthest => s == Sign::Negative,
        }
    }

    fn next_rand(&mut self) -> u64 {
        self.rng ^= self.rng << 13;
        self.rng ^= self.rng >> 7;
        self.rng ^= self.rng << 17;
        self.rng
    }

    fn select(&mut self, ids: &mut [u32], k: usize, frame: Frame) {
        let pts = self.pts;
        let cmp = |a: &u32, b: &u32| frame_cmp(frame, &pts[*a as usize], &pts[*b as usize]);
        match self.median {
            MedianSelect::Deterministic => {
                ids.select_nth_unstable_by(k, cmp);
            }
            MedianSelect::Quickselect => {
                let (mut lo, mut hi) = (0usize, ids.len());
                while hi - lo > 1 {
                    let pivot_at = lo + (self.next_rand() % (hi - lo) as u64) as usize;
                    ids.swap(pivot_at, hi - 1);
                    let pivot = ids[hi - 1];
                    let mut store = lo;
                    for i in lo..hi - 1 {
                        if cmp(&ids[i], &pivot) == Ordering::Less {
                            ids.swap(i, store);
                            store += 1;
                        }
                    }
                    ids.swap(store, hi - 1);
                    match store.cmp(&k) {
                        Ordering::Equal => return,
                        Ordering::Less => lo = store + 1,
                        Ordering::Greater => hi = store,
                    }
                }
            }
        }
    }

    /// Base cases for two or three points sorted in `frame`. Returns the
    /// counterclockwise hull edge out of the minimum and the clockwise hull
    /// edge out of the maximum.
    fn base_case(&mut self, ids: &mut [u32], frame: Frame) -> (EdgeId, EdgeId) {
        let pts = self.pts;
        ids.sort_by(|a, b| frame_cmp(frame, &pts[*a as usize], &pts[*b as usize]));
        if ids.len() == 2 {
            let a = self.arena.make_edge(ids[0], ids[1]);
            return (a, sym(a));
        }
        let (s0, s1, s2) = (ids[0], ids[1], ids[2]);
        let a = self.arena.make_edge(s0, s1);
        let b = self.arena.make_edge(s1, s2);
        self.arena.splice(sym(a), b);
        if self.ccw(s0, s1, s2) {
            self.arena.connect(b, a);
            (a, sym(b))
        } else if self.ccw(s0, s2, s1) {
            let c = self.arena.connect(b, a);
            (sym(c), c)
        } else {
            (a, sym(b))
        }
    }

    /// Hull extremes of an already triangulated subset in another frame.
    fn reframe(&self, ldo: EdgeId, frame: Frame) -> (EdgeId, EdgeId) {
        // Walk the outer face: sym(ldo) has the outer face on its left.
        let start = sym(ldo);
        let mut e = start;
        let mut best_min = e;
        let mut best_max = e;
        loop {
            let v = self.arena.org(e);
            if frame_cmp(frame, self.pt(v), self.pt(self.arena.org(best_min))) == Ordering::Less {
                best_min = e;
            }
            if frame_cmp(frame, self.pt(v), self.pt(self.arena.org(best_max))) == Ordering::Greater {
                best_max = e;
            }
            e = self.arena.lnext(e);
            if e == start {
                break;
            }
        }
        (sym(self.arena.lprev(best_min)), best_max)
    }

    /// Recursive build; returned edges are extreme in `frame`.
    fn build(&mut self, ids: &mut [u32], frame: Frame, alternate: bool) -> (EdgeId, EdgeId) {
        if ids.len() <= 3 {
            return self.base_case(ids, frame);
        }
        let split = if alternate {
            if P::wider_than_tall(self.pts, ids) {
                Frame::Vertical
            } else {
                Frame::Horizontal
            }
        } else {
            frame
        };
        let mid = ids.len() / 2;
        self.select(ids, mid, split);
        let (left, right) = ids.split_at_mut(mid);
        let (ldo, ldi) = self.build(left, split, alternate);
        let (rdi, rdo) = self.build(right, split, alternate);
        let (ldo, rdo) = self.merge(ldo, ldi, rdi, rdo);
        if split == frame {
            (ldo, rdo)
        } else {
            self.reframe(ldo, frame)
        }
    }

    fn merge(&mut self, mut ldo: EdgeId, mut ldi: EdgeId, mut rdi: EdgeId, mut rdo: EdgeId) -> (EdgeId, EdgeId) {
        loop {
            if self.leftof(self.arena.org(rdi), ldi) {
                ldi = self.arena.lnext(ldi);
            } else if self.rightof(self.arena.org(ldi), rdi) {
                rdi = self.arena.rprev(rdi);
            } else {
                break;
            }
        }
        let basel = self.arena.connect(sym(rdi), ldi);
        if self.arena.org(ldi) == self.arena.org(ldo) {
            ldo = sym(basel);
        }
        if self.arena.org(rdi) == self.arena.org(rdo) {
            rdo = basel;
        }
        self.zip(basel);
        (ldo, rdo)
    }

    #[inline]
    fn valid(&self, e: EdgeId, basel: EdgeId) -> bool {
        self.rightof(self.arena.dest(e), basel)
    }

    /// Cross-edge zipper from the lower to the upper common tangent.
    fn zip(&mut self, mut basel: EdgeId) {
        loop {
            let mut lcand = self.arena.onext(sym(basel));
            if self.valid(lcand, basel) {
                loop {
                    let nxt = self.arena.onext(lcand);
                    if !self.in_circle(
                        self.arena.dest(basel),
                        self.arena.org(basel),
                        self.arena.dest(lcand),
                        self.arena.dest(nxt),
                    ) {
                        break;
                    }
                    self.arena.delete(lcand);
                    lcand = nxt;
                }
            }
            let mut rcand = self.arena.oprev(basel);
            if self.valid(rcand, basel) {
                loop {
                    let prv = self.arena.oprev(rcand);
                    if !self.in_circle(
                        self.arena.dest(basel),
                        self.arena.org(basel),
                        self.arena.dest(rcand),
                        self.arena.dest(prv),
                    ) {
                        break;
                    }
                    self.arena.delete(rcand);
                    rcand = prv;
                }
            }
            let lvalid = self.valid(lcand, basel);
            let rvalid = self.valid(rcand, basel);
            if !lvalid && !rvalid {
                break;
            }
            let take_right = !lvalid
                || (rvalid
                    && self.in_circle(
                        self.arena.dest(lcand),
                        self.arena.org(lcand),
                        self.arena.org(rcand),
                        self.arena.dest(rcand),
                    ));
            basel = if take_right {
                self.arena.connect(rcand, sym(basel))
            } else {
                let sl = sym(lcand);
                self.arena.connect(sym(basel), sl)
            };
        }
    }

    /// Triangulates a convex chain given in counterclockwise order. Returns
    /// the edge chain[0]→chain[1] and the edge chain[n−1]→chain[n−2].
    fn build_chain(&mut self, chain: &[u32]) -> (EdgeId, EdgeId) {
        match chain.len() {
            2 => {
                let a = self.arena.make_edge(chain[0], chain[1]);
                (a, sym(a))
            }
            3 => {
                let a = self.arena.make_edge(chain[0], chain[1]);
                let b = self.arena.make_edge(chain[1], chain[2]);
                self.arena.splice(sym(a), b);
                self.arena.connect(b, a);
                (a, sym(b))
            }
            n => {
                let mid = n / 2;
                let (first, ldi) = self.build_chain(&chain[..mid]);
                let (rdi, last) = self.build_chain(&chain[mid..]);
                // The polygon edge chain[mid−1]→chain[mid] is the lower
                // tangent; the zipper ends at chain[n−1]→chain[0].
                let basel = self.arena.connect(sym(rdi), ldi);
                self.zip(basel);
                (first, last)
            }
        }
    }
}

/// Neighbor entry in a mesh adjacency list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Neighbor {
    Site(u32),
    Infinite,
}

/// Triangulation with a distinguished infinite vertex.
#[derive(Debug, Clone)]
pub struct TriangulationMesh<P = IntPoint> {
    pub kind: MeshKind,
    pub points: Vec<P>,
    /// Vertices participating in the mesh, ascending.
    pub sites: Vec<u32>,
    /// Counterclockwise neighbors per point index (empty for non-sites).
    pub adjacency: Vec<Vec<Neighbor>>,
}

impl<P: PlanarPoint> TriangulationMesh<P> {
    /// Edge count including edges to the infinite vertex.
    pub fn edge_count(&self) -> usize {
        let mut finite = 0usize;
        let mut infinite = 0usize;
        for nbrs in &self.adjacency {
            for n in nbrs {
                match n {
                    Neighbor::Site(_) => finite += 1,
                    Neighbor::Infinite => infinite += 1,
                }
            }
        }
        finite / 2 + infinite
    }

    pub fn finite_edge_count(&self) -> usize {
        self.adjacency.iter().flatten().filter(|n| matches!(n, Neighbor::Site(_))).count() / 2
    }

    /// Finite triangles, counterclockwise, each listed once with its
    /// smallest vertex first.
    pub fn triangles(&self) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for &v in &self.sites {
            let nbrs = &self.adjacency[v as usize];
            let k = nbrs.len();
            if k < 2 {
                continue;
            }
            for i in 0..k {
                if let (Neighbor::Site(a), Neighbor::Site(b)) = (nbrs[i], nbrs[(i + 1) % k]) {
                    if v < a && v < b && (k > 2 || i == 0) {
                        out.push([v, a, b]);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Triangles as sorted vertex triples, for set comparisons.
    pub fn triangle_set(&self) -> Vec<[u32; 3]> {
        let mut t: Vec<[u32; 3]> = self
            .triangles()
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        t.sort_unstable();
        t
    }

    /// Undirected finite edges (u < v).
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for &v in &self.sites {
            for n in &self.adjacency[v as usize] {
                if let Neighbor::Site(u) = *n {
                    if v < u {
                        out.push((v, u));
                    }
                }
            }
        }
        out
    }

    /// Neighbor following `u` counterclockwise around `v`.
    pub fn next_ccw(&self, v: u32, u: u32) -> Option<Neighbor> {
        let nbrs = &self.adjacency[v as usize];
        let i = nbrs.iter().position(|n| *n == Neighbor::Site(u))?;
        Some(nbrs[(i + 1) % nbrs.len()])
    }
}

fn check_distinct<P: PlanarPoint>(points: &[P]) -> Result<(), DelaunayError> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| P::cmp_xy(&points[a], &points[b]));
    for w in order.windows(2) {
        if P::cmp_xy(&points[w[0]], &points[w[1]]) == Ordering::Equal {
            return Err(DelaunayError::DuplicatePoint(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    Ok(())
}

fn export<P: PlanarPoint>(
    points: &[P],
    kind: MeshKind,
    arena: &QuadArena,
    ldo: Option<EdgeId>,
    single: Option<u32>,
) -> TriangulationMesh<P> {
    let n = points.len();
    let mut adjacency = vec![Vec::new(); n];
    let mut sites = Vec::new();
    if let Some(v) = single {
        adjacency[v as usize].push(Neighbor::Infinite);
        sites.push(v);
        return TriangulationMesh { kind, points: points.to_vec(), sites, adjacency };
    }
    let ldo = ldo.expect("mesh with edges");
    let mut outer_left = vec![false; arena.next.len()];
    let start = sym(ldo);
    let mut e = start;
    loop {
        outer_left[e as usize] = true;
        e = arena.lnext(e);
        if e == start {
            break;
        }
    }
    let mut out_edge = vec![DEAD; n];
    for q in 0..arena.quads() {
        if !arena.is_live(q) {
            continue;
        }
        let e = (4 * q) as EdgeId;
        out_edge[arena.org(e) as usize] = e;
        out_edge[arena.dest(e) as usize] = sym(e);
    }
    for v in 0..n {
        let first = out_edge[v];
        if first == DEAD {
            continue;
        }
        sites.push(v as u32);
        let list = &mut adjacency[v];
        let mut e = first;
        loop {
            list.push(Neighbor::Site(arena.dest(e)));
            if outer_left[e as usize] {
                list.push(Neighbor::Infinite);
            }
            e = arena.onext(e);
            if e == first {
                break;
            }
        }
    }
    TriangulationMesh { kind, points: points.to_vec(), sites, adjacency }
}

fn build_unordered<P: PlanarPoint>(
    points: &[P],
    kind: MeshKind,
    opts: &BuildOptions,
) -> Result<TriangulationMesh<P>, DelaunayError> {
    if points.is_empty() {
        return Err(DelaunayError::NoPoints);
    }
    check_distinct(points)?;
    if points.len() == 1 {
        return Ok(export(points, kind, &QuadArena::default(), None, Some(0)));
    }
    let mut ids: Vec<u32> = (0..points.len() as u32).collect();
    let (arena, ldo) = if opts.threads > 1 && points.len() >= 2 * opts.fork_threshold {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool");
        pool.install(|| build_parallel(points, kind, opts, &mut ids, Frame::Vertical))
    } else {
        let mut b = Builder::new(points, kind, opts.median, 3 * points.len());
        let (ldo, _) = b.build(&mut ids, Frame::Vertical, true);
        (b.arena, ldo)
    };
    Ok(export(points, kind, &arena, Some(ldo), None))
}

fn build_parallel<P: PlanarPoint>(
    points: &[P],
    kind: MeshKind,
    opts: &BuildOptions,
    ids: &mut [u32],
    frame: Frame,
) -> (QuadArena, EdgeId) {
    if ids.len() < 2 * opts.fork_threshold {
        let mut b = Builder::new(points, kind, opts.median, 3 * ids.len());
        let (ldo, _) = b.build(ids, frame, true);
        return (b.arena, ldo);
    }
    let mut b = Builder::new(points, kind, opts.median, 0);
    let split = if P::wider_than_tall(points, ids) { Frame::Vertical } else { Frame::Horizontal };
    let mid = ids.len() / 2;
    b.select(ids, mid, split);
    let (left, right) = ids.split_at_mut(mid);
    let ((la, lldo), (ra, rldo)) = rayon::join(
        || build_parallel(points, kind, opts, left, split),
        || build_parallel(points, kind, opts, right, split),
    );
    b.arena = la;
    let offset = b.arena.absorb(ra);
    let rldo = rldo + offset;
    let (ldo, ldi) = b.reframe(lldo, split);
    let (rdi, rdo) = b.reframe(rldo, split);
    let (ldo, _) = b.merge(ldo, ldi, rdi, rdo);
    let ldo = if split == frame { ldo } else { b.reframe(ldo, frame).0 };
    (b.arena, ldo)
}

/// Closest-point Delaunay triangulation of distinct points.
pub fn build_closest(points: &[IntPoint]) -> Result<TriangulationMesh, DelaunayError> {
    build_closest_with(points, &BuildOptions::default())
}

pub fn build_closest_with(
    points: &[IntPoint],
    opts: &BuildOptions,
) -> Result<TriangulationMesh, DelaunayError> {
    build_unordered(points, MeshKind::Closest, opts)
}

/// Closest-point triangulation for any [`PlanarPoint`] type.
pub fn build_closest_generic<P: PlanarPoint>(points: &[P]) -> Result<TriangulationMesh<P>, DelaunayError> {
    build_unordered(points, MeshKind::Closest, &BuildOptions::default())
}

/// Farthest-point Delaunay triangulation; only hull vertices participate.
pub fn build_farthest(points: &[IntPoint]) -> Result<TriangulationMesh, DelaunayError> {
    if points.is_empty() {
        return Err(DelaunayError::NoPoints);
    }
    check_distinct(points)?;
    let hull: Vec<u32> = convex_hull(points).into_iter().map(|i| i as u32).collect();
    Ok(build_chain_mesh(points, &hull, MeshKind::Farthest))
}

/// Triangulates a strictly convex polygon given in hull order (either
/// orientation) without any median splits.
pub fn build_convex_ordered<P: PlanarPoint>(
    hull: &[P],
    kind: MeshKind,
) -> Result<TriangulationMesh<P>, DelaunayError> {
    if hull.is_empty() {
        return Err(DelaunayError::NoPoints);
    }
    check_distinct(hull)?;
    let n = hull.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    if n >= 3 {
        let turn = |i: usize| {
            P::orient(&hull[i], &hull[(i + 1) % n], &hull[(i + 2) % n])
        };
        let s0 = turn(0);
        if s0 == Sign::Zero || (1..n).any(|i| turn(i) != s0) {
            return Err(DelaunayError::NotConvex);
        }
        if !winds_once(hull) {
            return Err(DelaunayError::NotConvex);
        }
        if s0 == Sign::Negative {
            order.reverse();
        }
    }
    Ok(build_chain_mesh(hull, &order, kind))
}

/// For a polygon whose turns share one sign, the number of local minima
/// in (y, −x) order equals the winding number.
fn winds_once<P: PlanarPoint>(hull: &[P]) -> bool {
    let n = hull.len();
    let minima = (0..n)
        .filter(|&i| {
            let prev = &hull[(i + n - 1) % n];
            let cur = &hull[i];
            let next = &hull[(i + 1) % n];
            P::cmp_yx(cur, prev) == Ordering::Less && P::cmp_yx(cur, next) == Ordering::Less
        })
        .count();
    minima == 1
}

fn build_chain_mesh<P: PlanarPoint>(points: &[P], chain: &[u32], kind: MeshKind) -> TriangulationMesh<P> {
    match chain.len() {
        0 => unreachable!("empty chain"),
        1 => export(points, kind, &QuadArena::default(), None, Some(chain[0])),
        _ => {
            let mut b = Builder::new(points, kind, MedianSelect::Quickselect, 3 * chain.len());
            let (first, _) = b.build_chain(chain);
            export(points, kind, &b.arena, Some(first), None)
        }
    }
}

/// Farthest triangles recovered through inversion: hull vertices are
/// inverted about the (exact) hull vertex centroid, triangulated with the
/// closest predicate in rational arithmetic, and the triangles whose
/// circumcircle contains the centroid are kept. Triples are sorted and
/// refer to the original indices.
pub fn farthest_triangles_by_inversion(points: &[IntPoint]) -> Result<Vec<[u32; 3]>, DelaunayError> {
    if points.is_empty() {
        return Err(DelaunayError::NoPoints);
    }
    check_distinct(points)?;
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return Ok(Vec::new());
    }
    let k = int_rational(hull.len() as i64);
    let (sx, sy) = hull.iter().fold((Rational::zero(), Rational::zero()), |(sx, sy), &i| {
        (sx + int_rational(points[i].x), sy + int_rational(points[i].y))
    });
    let center = RationalPoint::new(sx / &k, sy / &k);
    let inverted: Vec<RationalPoint> = hull
        .iter()
        .map(|&i| invert_rational(&points[i].to_rational(), &center).expect("centroid is interior"))
        .collect();
    let mesh = build_closest_generic(&inverted)?;
    let mut out: Vec<[u32; 3]> = mesh
        .triangles()
        .into_iter()
        .filter(|t| {
            let [a, b, c] = t.map(|v| &inverted[v as usize]);
            incircle_rational(a, b, c, &center) == Sign::Positive
        })
        .map(|t| {
            let mut m = t.map(|v| hull[v as usize] as u32);
            m.sort_unstable();
            m
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Minimum arc angle and data radius that define the clip square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClipConfig {
    /// Smallest arc angle (radians) for which centers must be found.
    pub min_arc_angle: f64,
    /// Radius of a circle containing the data; `None` means half the
    /// bounding-box diagonal of the input.
    pub data_radius: Option<f64>,
}

impl Default for ClipConfig {
    fn default() -> Self {
        ClipConfig { min_arc_angle: 0.1f64.to_radians(), data_radius: None }
    }
}

impl ClipConfig {
    pub fn with_angle_degrees(deg: f64) -> Self {
        ClipConfig { min_arc_angle: deg.to_radians(), data_radius: None }
    }

    /// Radius beyond which centers only produce arcs flatter than the
    /// minimum angle: r / sin(α/2).
    pub fn clip_radius(&self, data_radius: f64) -> f64 {
        data_radius / (self.min_arc_angle / 2.0).sin()
    }
}

/// Half the bounding-box diagonal of a point set.
pub fn bbox_half_diagonal(points: &[IntPoint]) -> f64 {
    let (mut x0, mut x1, mut y0, mut y1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for p in points {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let dx = (x1 as i128 - x0 as i128) as f64;
    let dy = (y1 as i128 - y0 as i128) as f64;
    0.5 * (dx * dx + dy * dy).sqrt()
}

/// Geometry of one Voronoi edge.
#[derive(Debug, Clone, PartialEq)]
pub enum EdgeGeometry {
    /// Between two Voronoi vertices (indices into `vertices`).
    Segment(usize, usize),
    /// From a Voronoi vertex towards infinity along an integer direction.
    Ray { origin: usize, dir: (BigInt, BigInt) },
    /// Full bisector line through `point`.
    Line { point: RationalPoint, dir: (BigInt, BigInt) },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiEdge {
    pub sites: (u32, u32),
    pub geometry: EdgeGeometry,
}

#[derive(Debug, Clone)]
pub struct VoronoiDiagram {
    pub kind: MeshKind,
    /// Sites owning a cell.
    pub cells: Vec<u32>,
    pub vertices: Vec<RationalPoint>,
    /// Dual triangle of each vertex.
    pub vertex_triangles: Vec<[u32; 3]>,
    pub edges: Vec<VoronoiEdge>,
    pub clip_radius: Option<Rational>,
}

/// Dual Voronoi diagram of a mesh. Vertices are exact circumcenters;
/// unbounded edges stay as rays or lines.
pub fn voronoi_from_delaunay(mesh: &TriangulationMesh, clip: Option<&ClipConfig>) -> VoronoiDiagram {
    let tris = mesh.triangles();
    let mut vertices = Vec::with_capacity(tris.len());
    let mut index = std::collections::HashMap::with_capacity(tris.len());
    for t in &tris {
        let p = &mesh.points;
        let c = circumcenter(p[t[0] as usize], p[t[1] as usize], p[t[2] as usize])
            .expect("mesh triangles are non-degenerate");
        let mut key = *t;
        key.sort_unstable();
        index.insert(key, vertices.len());
        vertices.push(c);
    }
    let face = |a: u32, b: u32| -> Option<usize> {
        // Left face of a→b: a, b, next neighbor after b around a.
        match mesh.next_ccw(a, b)? {
            Neighbor::Site(c) => {
                let mut key = [a, b, c];
                key.sort_unstable();
                index.get(&key).copied()
            }
            Neighbor::Infinite => None,
        }
    };
    let mut edges = Vec::new();
    for (u, v) in mesh.edges() {
        let pu = mesh.points[u as usize];
        let pv = mesh.points[v as usize];
        let dx = BigInt::from(pv.x as i128 - pu.x as i128);
        let dy = BigInt::from(pv.y as i128 - pu.y as i128);
        let left = face(u, v);
        let right = face(v, u);
        let geometry = match (left, right) {
            (Some(a), Some(b)) => {
                if a == b || vertices[a] == vertices[b] {
                    continue;
                }
                EdgeGeometry::Segment(a, b)
            }
            (Some(a), None) | (None, Some(a)) => {
                // Triangle on the left of the directed hull edge.
                let (ex, ey) = if left.is_some() { (dx.clone(), dy.clone()) } else { (-dx.clone(), -dy.clone()) };
                let dir = match mesh.kind {
                    MeshKind::Closest => (ey, -ex),
                    MeshKind::Farthest => (-ey, ex),
                };
                EdgeGeometry::Ray { origin: a, dir }
            }
            (None, None) => {
                let two = int_rational(2);
                let mid = RationalPoint::new(
                    (int_rational(pu.x) + int_rational(pv.x)) / &two,
                    (int_rational(pu.y) + int_rational(pv.y)) / &two,
                );
                EdgeGeometry::Line { point: mid, dir: (-dy, dx) }
            }
        };
        edges.push(VoronoiEdge { sites: (u, v), geometry });
    }
    let clip_radius = clip.map(|c| {
        let r = c.data_radius.unwrap_or_else(|| bbox_half_diagonal(&mesh.points));
        let big = c.clip_radius(r).ceil().max(1.0);
        Rational::from_integer(BigInt::from(big as i128))
    });
    VoronoiDiagram {
        kind: mesh.kind,
        cells: mesh.sites.clone(),
        vertices,
        vertex_triangles: tris,
        edges,
        clip_radius: clip_radius.filter(|r| !r.is_zero()),
    }
}
