//! Concrete embeddings for surviving candidates.
//!
//! Coordinates are found by sequential linear programming on the points
//! themselves: the smallest margin over non-edge distances and face
//! convexity is maximised subject to unit norms and equal edge lengths. A
//! positive margin proves that the graph is the exact contact graph of the
//! points; the extremes of `d` are then traced by maximising and minimising
//! `d` over the closure of the feasible set.

mod nlp;
mod start;

pub use start::tutte_layout;

use std::f64::consts::PI;

use crate::feasibility::{SearchError, SearchNode, SearchReport, SearchOutcome, D};
use crate::linear_relax::Interval;
use crate::plane_graph::{canonical_code, trace_faces, CanonicalCode, Face, PlaneGraph};
use crate::sphere_geom::{d_flip, lambda_maxmin, vertex_shiftable, Embedding, SphericalPolygon};

use nlp::{polish, slp, Goal, SlpOptions, Structure};

/// Smallest margin accepted as strict (non-edge cosines, corner
/// determinants).
pub const EMBED_MARGIN: f64 = 1e-8;
/// Largest equality residual of a stored embedding.
pub const EDGE_TOL: f64 = 1e-7;
/// Resolution of reported `d` ranges.
pub const DRANGE_RESOLUTION: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pruned,
    Embedded,
    Unresolved,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pruned => "PRUNED",
            Status::Embedded => "EMBEDDED",
            Status::Unresolved => "UNRESOLVED",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s {
            "PRUNED" => Some(Status::Pruned),
            "EMBEDDED" => Some(Status::Embedded),
            "UNRESOLVED" => Some(Status::Unresolved),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub maximal: bool,
    pub d_irreducible: bool,
}

/// Certification outcome for one candidate graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub n: usize,
    pub code: CanonicalCode,
    pub status: Status,
    pub d_min: f64,
    pub d_max: f64,
    pub flags: Flags,
    /// Representative embedding with the largest margin.
    pub embedding: Option<Embedding>,
    /// Configurations at `d_min` and `d_max` (closure of the family; may
    /// carry extra contacts).
    pub extremes: Vec<Embedding>,
    /// Why a graph was pruned or left unresolved.
    pub note: Option<String>,
}

impl ResultRecord {
    fn bare(g: &PlaneGraph, status: Status, note: impl Into<String>) -> Self {
        ResultRecord {
            n: g.vertex_count(),
            code: canonical_code(g),
            status,
            d_min: f64::NAN,
            d_max: f64::NAN,
            flags: Flags::default(),
            embedding: None,
            extremes: Vec::new(),
            note: Some(note.into()),
        }
    }

    pub fn graph(&self) -> PlaneGraph {
        self.code.to_graph().expect("stored canonical code decodes")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CertifyError {
    #[error("empty catalog")]
    EmptyCatalog,
}

#[derive(Debug, Clone)]
pub struct CertifyConfig {
    /// Starting configurations tried before giving up.
    pub starts: usize,
    pub max_iter: usize,
    /// Interior samples of the `d` range checked for D-flips.
    pub flip_samples: usize,
    /// Fixed-`d` probes per direction when widening the range.
    pub bisect_steps: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            starts: 8,
            max_iter: 200,
            flip_samples: 3,
            bisect_steps: 8,
        }
    }
}

/// Hull of the `d` intervals of surviving boxes.
pub fn d_hull(boxes: &[SearchNode]) -> Option<Interval> {
    boxes.iter().map(|b| b.bx[D]).reduce(|a, b| a.hull(&b))
}

fn t_bounds(d: Interval) -> (f64, f64) {
    (d.hi.min(PI).cos(), d.lo.max(0.0).cos())
}

/// Starting configurations: Tutte embeddings with each large face outside,
/// then jittered copies.
fn starts(g: &PlaneGraph, faces: &[Face], d: f64, count: usize) -> Vec<Vec<crate::sphere_geom::SpherePoint>> {
    let mut order: Vec<usize> = (0..faces.len()).collect();
    order.sort_by_key(|&f| std::cmp::Reverse(faces[f].size()));
    let mut out = Vec::new();
    for (i, &f) in order.iter().enumerate().take(count.div_ceil(2)) {
        let m = faces[f].size();
        let cap = ((0.5 * d).sin() / (PI / m as f64).sin()).clamp(-1.0, 1.0).asin();
        let base = start::tutte_start(g, faces, f, cap);
        out.push(base.clone());
        out.push(start::jitter(&base, 0.05, i as u64 + 1));
    }
    out.truncate(count);
    out
}

/// Checks and normalises a solver point: isolated vertices are moved to the
/// centre of their largest empty circle, then edge lengths, margins, the
/// contact graph and irreducibility are verified.
fn finalize(g: &PlaneGraph, faces: &[Face], s: &Structure, x: &[f64]) -> Option<Embedding> {
    if s.eq_violation(x) > 1e-12 || s.slack(x) < EMBED_MARGIN {
        return None;
    }
    let (mut pts, t) = start::unpack(x);
    let d = t.clamp(-1.0, 1.0).acos();
    for (&w, &fid) in g.placement() {
        let poly = SphericalPolygon::new(faces[fid].vertices().iter().map(|&v| pts[v]).collect(), d).ok()?;
        let mm = lambda_maxmin(&poly);
        if mm.value <= d + EMBED_MARGIN {
            return None;
        }
        pts[w] = mm.point;
    }
    let emb = Embedding::new(g.clone(), pts, d);
    if emb.residual() > EDGE_TOL || emb.non_edge_gap() < EMBED_MARGIN {
        return None;
    }
    if !emb.reproduces_graph(1e-9) || !verify_irreducible(&emb) {
        return None;
    }
    Some(emb)
}

/// Solves for coordinates with `d` inside `d_range`; `None` when no start
/// reaches a strictly feasible configuration.
pub fn refine_embedding(g: &PlaneGraph, d_range: Interval, cfg: &CertifyConfig) -> Option<Embedding> {
    refine_with_x(g, d_range, cfg).map(|(e, _)| e)
}

fn refine_with_x(g: &PlaneGraph, d_range: Interval, cfg: &CertifyConfig) -> Option<(Embedding, Vec<f64>)> {
    let faces = trace_faces(g).ok()?;
    let s = Structure::new(g).ok()?;
    let opts = SlpOptions {
        goal: Goal::MaxSlack,
        t_bounds: t_bounds(d_range),
        max_iter: cfg.max_iter,
    };
    for pts in starts(g, &faces, d_range.mid(), cfg.starts) {
        let x0 = start::pack(&pts, d_range.mid().cos());
        let mut x = slp(&s, &x0, &opts);
        polish(&s, &mut x, true);
        if let Some(e) = finalize(g, &faces, &s, &x) {
            return Some((e, x));
        }
    }
    None
}

/// Extreme `d` reached from a strictly feasible seed by SLP on `d`, with
/// the configuration attaining it (may carry extra contacts).
fn trace(s: &Structure, seed: &[f64], goal: Goal, d_range: Interval, cfg: &CertifyConfig) -> Option<(f64, Vec<f64>)> {
    let opts = SlpOptions {
        goal,
        t_bounds: t_bounds(d_range),
        max_iter: cfg.max_iter * 2,
    };
    // restarts reset the trust region after a premature stop
    let mut x = seed.to_vec();
    for _ in 0..4 {
        let before = x[3 * s.n];
        x = slp(s, &x, &opts);
        polish(s, &mut x, true);
        if (x[3 * s.n] - before).abs() < 1e-10 {
            break;
        }
    }
    if s.eq_violation(&x) > 1e-10 || s.slack(&x) < -1e-7 {
        return None;
    }
    Some((x[3 * s.n].clamp(-1.0, 1.0).acos(), x))
}

/// Strictly feasible configuration with `d` fixed, tried from `warm` first
/// and then from fresh starts.
fn at_fixed_d(g: &PlaneGraph, warm: Option<&[f64]>, d: f64, fresh: bool, cfg: &CertifyConfig) -> Option<(Embedding, Vec<f64>)> {
    let faces = trace_faces(g).ok()?;
    let s = Structure::new(g).ok()?;
    let t = d.cos();
    let opts = SlpOptions {
        goal: Goal::MaxSlack,
        t_bounds: (t, t),
        max_iter: cfg.max_iter,
    };
    let count = if fresh { cfg.starts } else { 0 };
    let fresh = starts(g, &faces, d, count).into_iter().map(|p| start::pack(&p, t));
    // jittered copies of the warm start leave a possible fold of d
    let warm_pts = warm.map(|w| start::unpack(w).0);
    let nudged = warm_pts
        .iter()
        .flat_map(|p| (1..=3).map(move |k| start::pack(&start::jitter(p, 0.02 * k as f64, k), t)));
    for mut x in warm.map(|w| w.to_vec()).into_iter().chain(nudged).chain(fresh) {
        x[3 * s.n] = t;
        let mut x = slp(&s, &x, &opts);
        polish(&s, &mut x, true);
        if let Some(e) = finalize(g, &faces, &s, &x) {
            return Some((e, x));
        }
    }
    None
}

/// `[d_min, d_max]` of the family of `g` within the surviving boxes.
///
/// Strictly feasible seeds are collected at box centres and around the
/// representative, `d` is pushed outwards from each, and the gap to the box
/// hull is then bisected with fixed-`d` solves so that other branches of a
/// non-convex family are reached. `None` if no strictly feasible point is
/// found.
pub fn d_range(g: &PlaneGraph, boxes: &[SearchNode], cfg: &CertifyConfig) -> Option<DRange> {
    let hull = d_hull(boxes)?;
    let s = Structure::new(g).ok()?;
    let (emb, x) = refine_with_x(g, hull, cfg)?;
    let mut seeds = vec![x.clone()];
    let mut mids: Vec<f64> = boxes.iter().map(|b| b.bx[D].mid()).collect();
    mids.sort_by(f64::total_cmp);
    mids.dedup_by(|a, b| (*a - *b).abs() < 2e-3);
    let step = (mids.len() / 6).max(1);
    for &d in mids.iter().step_by(step) {
        if let Some((_, xs)) = at_fixed_d(g, Some(&x), d, true, cfg) {
            seeds.push(xs);
        }
    }
    // the representative may sit on a fold of d; probe both sides
    for k in [-1.0, 1.0] {
        for delta in [1e-3, 3e-3, 1e-2, 3e-2] {
            let d = emb.d + k * delta;
            if hull.contains(d) {
                if let Some((_, xs)) = at_fixed_d(g, Some(&x), d, false, cfg) {
                    seeds.push(xs);
                }
            }
        }
    }
    let mut lo = (emb.d, x.clone());
    let mut hi = (emb.d, x.clone());
    for seed in &seeds {
        if let Some(r) = trace(&s, seed, Goal::MinD { floor: 0.0 }, hull, cfg) {
            if r.0 < lo.0 {
                lo = r;
            }
        }
        if let Some(r) = trace(&s, seed, Goal::MaxD { floor: 0.0 }, hull, cfg) {
            if r.0 > hi.0 {
                hi = r;
            }
        }
    }
    // bisect towards the hull ends for branches the traces missed
    for upward in [true, false] {
        let (mut inner, mut outer) = if upward { (hi.0, hull.hi) } else { (lo.0, hull.lo) };
        for _ in 0..cfg.bisect_steps {
            if (outer - inner).abs() < DRANGE_RESOLUTION {
                break;
            }
            let mid = 0.5 * (inner + outer);
            let warm = if upward { hi.1.clone() } else { lo.1.clone() };
            let Some((_, xs)) = at_fixed_d(g, Some(&warm), mid, true, cfg) else {
                outer = mid;
                continue;
            };
            let goal = if upward { Goal::MaxD { floor: 0.0 } } else { Goal::MinD { floor: 0.0 } };
            let r = trace(&s, &xs, goal, hull, cfg).unwrap_or((mid, xs.clone()));
            inner = if upward { r.0.max(mid) } else { r.0.min(mid) };
            let best = if upward { &mut hi } else { &mut lo };
            *best = if (upward && r.0 >= mid) || (!upward && r.0 <= mid) { r } else { (mid, xs) };
            seeds.push(best.1.clone());
        }
    }
    let emb_at = |(d, x): &(f64, Vec<f64>)| Embedding::new(g.clone(), start::unpack(x).0, *d);
    Some(DRange {
        d_min: lo.0,
        d_max: hi.0,
        extremes: vec![emb_at(&lo), emb_at(&hi)],
        representative: emb,
        seed: x,
    })
}

#[derive(Debug, Clone)]
pub struct DRange {
    pub d_min: f64,
    pub d_max: f64,
    pub representative: Embedding,
    pub extremes: Vec<Embedding>,
    seed: Vec<f64>,
}

/// No vertex can be shifted to increase its distance to all others.
pub fn verify_irreducible(emb: &Embedding) -> bool {
    (0..emb.points.len()).all(|v| !vertex_shiftable(emb, v))
}

/// Irreducible and no vertex admits a D-flip across a pair of its
/// neighbours.
pub fn verify_d_irreducible(emb: &Embedding) -> bool {
    if !verify_irreducible(emb) {
        return false;
    }
    let g = &emb.graph;
    for x in 0..emb.points.len() {
        let nb = g.neighbours(x);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if let Ok(Some(_)) = d_flip(emb, x, nb[i], nb[j]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Marks as maximal the records whose `d_max` equals the catalog maximum
/// (within `1e-5`) and whose own contact graph is realised there.
pub fn classify_maximal(records: &mut [ResultRecord], cfg: &CertifyConfig) -> Result<(), CertifyError> {
    let best = records
        .iter()
        .filter(|r| r.status == Status::Embedded)
        .map(|r| r.d_max)
        .fold(f64::NEG_INFINITY, f64::max);
    if !best.is_finite() {
        return Err(CertifyError::EmptyCatalog);
    }
    for r in records.iter_mut() {
        r.flags.maximal = false;
        if r.status != Status::Embedded || (r.d_max - best).abs() > 1e-5 {
            continue;
        }
        let g = r.graph();
        let Some(rep) = &r.embedding else { continue };
        let x0 = start::pack(&rep.points, rep.d.cos());
        r.flags.maximal = (r.d_max - r.d_min) < 1e-5 && (rep.d - r.d_max).abs() < 1e-5
            || at_fixed_d(&g, Some(&x0), r.d_max, false, cfg).is_some();
    }
    Ok(())
}

/// Full certification of one candidate from its search result. Embeddings
/// are labelled like the graph decoded from the record's canonical code.
pub fn certify(g: &PlaneGraph, search: &Result<SearchReport, SearchError>, cfg: &CertifyConfig) -> ResultRecord {
    let g = &canonical_code(g).to_graph().expect("canonical code decodes");
    let (boxes, overflow) = match search {
        Ok(rep) => match &rep.outcome {
            SearchOutcome::Pruned { level } => {
                return ResultRecord::bare(g, Status::Pruned, format!("linear relaxation empty at level {level}"))
            }
            SearchOutcome::Survived { boxes } => (boxes.as_slice(), false),
        },
        Err(SearchError::BudgetExceeded { frontier, .. }) => (frontier.as_slice(), true),
        Err(e) => return ResultRecord::bare(g, Status::Unresolved, e.to_string()),
    };
    let Some(range) = d_range(g, boxes, cfg) else {
        return if overflow {
            // the frontier is summarised by its d hull and size
            let mut rec = ResultRecord::bare(
                g,
                Status::Unresolved,
                format!("leaf budget exceeded with {} live boxes and no embedding found", boxes.len()),
            );
            if let Some(h) = d_hull(boxes) {
                (rec.d_min, rec.d_max) = (h.lo, h.hi);
            }
            rec
        } else {
            ResultRecord::bare(g, Status::Pruned, "no strictly feasible configuration in surviving boxes")
        };
    };
    let d_irreducible = family_d_irreducible(g, &range, cfg);
    ResultRecord {
        n: g.vertex_count(),
        code: canonical_code(g),
        status: Status::Embedded,
        d_min: range.d_min,
        d_max: range.d_max,
        flags: Flags {
            maximal: false,
            d_irreducible,
        },
        embedding: Some(range.representative.clone()),
        extremes: range.extremes.clone(),
        note: None,
    }
}

/// A family is D-irreducible when some sampled configuration of it admits
/// no D-flip. Samples: the representative, the extremes that still realise
/// the graph, and interior points spread over the range.
fn family_d_irreducible(g: &PlaneGraph, range: &DRange, cfg: &CertifyConfig) -> bool {
    if verify_d_irreducible(&range.representative) {
        return true;
    }
    let realises = |e: &Embedding| e.reproduces_graph(1e-9) && e.non_edge_gap() > EMBED_MARGIN;
    if range.extremes.iter().any(|e| realises(e) && verify_d_irreducible(e)) {
        return true;
    }
    let span = range.d_max - range.d_min;
    if span < DRANGE_RESOLUTION {
        return false;
    }
    let k = cfg.flip_samples + 2;
    (0..k).any(|i| {
        let f = i as f64 / (k - 1) as f64;
        let d = range.d_min + span * (0.001 + 0.998 * f);
        at_fixed_d(g, Some(&range.seed), d, true, cfg).is_some_and(|(e, _)| verify_d_irreducible(&e))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::{branch_and_bound, SearchConfig};
    use crate::plane_graph::fixtures;
    use crate::sphere_geom::{angular_dist, psi, testing::octahedron_points, SpherePoint};

    #[test]
    fn octahedron_embeds_as_axes() {
        let g = fixtures::octahedron();
        let e = refine_embedding(&g, Interval::new(1.4, 1.7), &CertifyConfig::default()).unwrap();
        assert!((e.d - PI / 2.0).abs() < 1e-9);
        // isometric to the axis points: every vertex has an antipode
        for p in &e.points {
            assert!(e.points.iter().any(|q| (angular_dist(p, q) - PI).abs() < 1e-7));
        }
    }

    #[test]
    fn over_tight_box_finds_nothing() {
        let g = fixtures::octahedron();
        assert!(refine_embedding(&g, Interval::new(1.2, 1.3), &CertifyConfig::default()).is_none());
    }

    #[test]
    fn octahedron_is_d_irreducible() {
        let e = Embedding::new(fixtures::octahedron(), octahedron_points(), PI / 2.0);
        assert!(verify_irreducible(&e));
        assert!(verify_d_irreducible(&e));
    }

    #[test]
    fn pulled_octahedron_vertex_is_shiftable() {
        let mut pts = octahedron_points();
        pts[4] = SpherePoint::from_polar(0.05, 0.0);
        // the only remaining contact is 4-0
        let mut rotation = vec![Vec::new(); 6];
        rotation[0] = vec![4];
        rotation[4] = vec![0];
        let g = PlaneGraph::from_rotation(rotation).unwrap();
        let e = Embedding::new(g, pts.clone(), psi(&pts).unwrap());
        assert!((e.d - (PI / 2.0 - 0.05)).abs() < 1e-12);
        assert!(vertex_shiftable(&e, 4));
        assert!(!verify_irreducible(&e));
    }

    #[test]
    fn certify_octahedron() {
        let g = fixtures::octahedron();
        let rep = branch_and_bound(&g, &SearchConfig::default());
        let r = certify(&g, &rep, &CertifyConfig::default());
        assert_eq!(r.status, Status::Embedded);
        assert!((r.d_min - PI / 2.0).abs() < 1e-6 && (r.d_max - PI / 2.0).abs() < 1e-6);
        assert!(r.flags.d_irreducible);
    }
}
