//! Exact lattice-polytope geometry: convex hulls of integer point sets in
//! small dimension, canonical vertex forms, rational membership tests, and
//! the product / slice / Π plumbing behind the signature recursion.
//!
//! Everything is integer or rational arithmetic; there is no floating point
//! in this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::Content;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {0}, got {1}")]
    DimMismatch(usize, usize),
    #[error("operation requires dimension {0}, got {1}")]
    WrongDim(usize, usize),
    #[error("point-set dimension {0} is not m(d+1) for alphabet size {1}")]
    BadShape(usize, usize),
}

/// A finite set of integer points sharing one dimension. Stored sorted and
/// deduplicated, so equal sets compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl PointSet {
    pub fn new(dim: usize, mut points: Vec<Vec<i64>>) -> Result<Self, GeomError> {
        for p in &points {
            if p.len() != dim {
                return Err(GeomError::DimMismatch(dim, p.len()));
            }
        }
        points.sort();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A lattice polytope in canonical form: the minimal vertex set, sorted
/// lexicographically. The empty polytope (no vertices) is a legitimate
/// value, standing in for the identically-(−∞) tropical polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    pub fn empty(dim: usize) -> Self {
        LatticePolytope {
            dim,
            vertices: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Andrew's monotone chain on a lexicographically presorted planar set.
/// Collinear interior points are dropped so the output is the minimal
/// vertex set in canonical (sorted) order.
pub fn hull_2d(points: &PointSet) -> Result<LatticePolytope, GeomError> {
    if points.dim() != 2 {
        return Err(GeomError::WrongDim(2, points.dim()));
    }
    let pts = points.points();
    if pts.len() <= 2 {
        return Ok(LatticePolytope {
            dim: 2,
            vertices: pts.to_vec(),
        });
    }

    fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    }

    let mut lower: Vec<&Vec<i64>> = Vec::new();
    for p in pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Vec<i64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }

    let mut vertices: Vec<Vec<i64>> = lower
        .iter()
        .chain(upper.iter())
        .map(|p| (*p).clone())
        .collect();
    vertices.sort();
    vertices.dedup();
    Ok(LatticePolytope { dim: 2, vertices })
}

/// Convex hull in any dimension by per-point extremality: `p` is a vertex
/// iff it is not a convex combination of the other points. Cheap linear
/// objectives certify most vertices before any rational arithmetic runs.
pub fn hull_nd(points: &PointSet) -> LatticePolytope {
    let pts = points.points();
    if pts.len() <= 2 {
        return LatticePolytope {
            dim: points.dim(),
            vertices: pts.to_vec(),
        };
    }
    let dim = points.dim();
    let n = pts.len();
    let mut certified = vec![false; n];

    // A point that is the unique maximiser of a linear objective is a vertex.
    for obj in objective_battery(dim) {
        let mut best = i64::MIN;
        let mut arg = usize::MAX;
        let mut unique = false;
        for (i, p) in pts.iter().enumerate() {
            let v: i64 = p.iter().zip(&obj).map(|(x, c)| x * c).sum();
            if v > best {
                best = v;
                arg = i;
                unique = true;
            } else if v == best {
                unique = false;
            }
        }
        if unique {
            certified[arg] = true;
        }
    }

    // A point that is the midpoint of two others is certainly interior;
    // this integer pass removes most non-vertices before any LP runs.
    let index: std::collections::HashSet<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
    let mut interior = vec![false; n];
    for (i, p) in pts.iter().enumerate() {
        if certified[i] {
            continue;
        }
        let doubled: Vec<i64> = p.iter().map(|x| 2 * x).collect();
        for q in pts {
            if q == p {
                continue;
            }
            let r: Vec<i64> = doubled.iter().zip(q).map(|(d, x)| d - x).collect();
            if r != *q && r != *p && index.contains(r.as_slice()) {
                interior[i] = true;
                break;
            }
        }
    }

    let mut vertices = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if certified[i] {
            vertices.push(p.clone());
            continue;
        }
        if interior[i] {
            continue;
        }
        let others: Vec<&[i64]> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.as_slice())
            .collect();
        if !in_convex_hull(p, &others) {
            vertices.push(p.clone());
        }
    }
    // pts were sorted, so vertices are already in canonical order
    LatticePolytope { dim, vertices }
}

/// Exact membership test: is `p` in the convex hull of `points`?
pub fn point_in_hull(p: &[i64], points: &PointSet) -> Result<bool, GeomError> {
    if p.len() != points.dim() {
        return Err(GeomError::DimMismatch(points.dim(), p.len()));
    }
    let refs: Vec<&[i64]> = points.points().iter().map(|q| q.as_slice()).collect();
    Ok(in_convex_hull(p, &refs))
}

/// conv(P) = conv(Q), decided by mutual inclusion. Equal linear-objective
/// maxima are a necessary condition checked first in pure integer
/// arithmetic, which rejects almost all unequal pairs; only points in the
/// symmetric difference ever reach the rational feasibility solver.
pub fn hulls_equal(p: &PointSet, q: &PointSet) -> Result<bool, GeomError> {
    if p.dim() != q.dim() {
        return Err(GeomError::DimMismatch(p.dim(), q.dim()));
    }
    if p.points() == q.points() {
        return Ok(true);
    }
    if p.is_empty() != q.is_empty() {
        return Ok(false);
    }
    for obj in objective_battery(p.dim()) {
        let max_of = |s: &PointSet| {
            s.points()
                .iter()
                .map(|pt| pt.iter().zip(&obj).map(|(x, c)| x * c).sum::<i64>())
                .max()
                .unwrap()
        };
        if max_of(p) != max_of(q) {
            return Ok(false);
        }
    }
    let p_diff: Vec<&Vec<i64>> = p
        .points()
        .iter()
        .filter(|pt| q.points().binary_search(pt).is_err())
        .collect();
    let q_diff: Vec<&Vec<i64>> = q
        .points()
        .iter()
        .filter(|pt| p.points().binary_search(pt).is_err())
        .collect();
    if p_diff.is_empty() && q_diff.is_empty() {
        return Ok(true);
    }
    let p_refs: Vec<&[i64]> = p.points().iter().map(|v| v.as_slice()).collect();
    let q_refs: Vec<&[i64]> = q.points().iter().map(|v| v.as_slice()).collect();
    // Membership against the small extremal core settles most difference
    // points; a core miss proves nothing and falls through to the full set.
    let p_core = extremal_core(&p_refs, p.dim());
    let q_core = extremal_core(&q_refs, q.dim());
    for pt in p_diff {
        if !in_convex_hull(pt, &q_core) && !in_convex_hull(pt, &q_refs) {
            return Ok(false);
        }
    }
    for pt in q_diff {
        if !in_convex_hull(pt, &p_core) && !in_convex_hull(pt, &p_refs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The argmax points of a wide spread of linear objectives: a subset of the
/// input whose hull approximates the full hull from inside.
fn extremal_core<'a>(pts: &[&'a [i64]], dim: usize) -> Vec<&'a [i64]> {
    let mut battery = objective_battery(dim);
    let mut state = 0x6a09e667f3bcc909u64 ^ (dim as u64);
    for _ in 0..96 {
        let mut v = Vec::with_capacity(dim);
        for _ in 0..dim {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            v.push(((state >> 33) % 21) as i64 - 10);
        }
        if v.iter().any(|&c| c != 0) {
            battery.push(v);
        }
    }
    let mut picked: Vec<usize> = Vec::new();
    for obj in &battery {
        let arg = (0..pts.len())
            .max_by_key(|&i| pts[i].iter().zip(obj).map(|(x, c)| x * c).sum::<i64>())
            .expect("nonempty set");
        picked.push(arg);
    }
    picked.sort_unstable();
    picked.dedup();
    picked.into_iter().map(|i| pts[i]).collect()
}

/// A subset of the input spanning the same hull: seeded with the extremal
/// core, then one sweep keeping every point not inside the running hull.
/// Every vertex of the full hull ends up in the subset.
pub(crate) fn spanning_subset(points: &PointSet) -> Vec<Vec<i64>> {
    let refs: Vec<&[i64]> = points.points().iter().map(|v| v.as_slice()).collect();
    if refs.len() <= 2 {
        return points.points().to_vec();
    }
    let mut span = extremal_core(&refs, points.dim());
    let seeded: std::collections::HashSet<&[i64]> = span.iter().copied().collect();
    for p in &refs {
        if seeded.contains(p) {
            continue;
        }
        if !in_convex_hull(p, &span) {
            span.push(p);
        }
    }
    let mut out: Vec<Vec<i64>> = span.into_iter().map(|p| p.to_vec()).collect();
    out.sort();
    out
}

/// Cartesian product with concatenated coordinates.
pub fn product(p: &PointSet, q: &PointSet) -> PointSet {
    let dim = p.dim() + q.dim();
    let mut points = Vec::with_capacity(p.len() * q.len());
    for x in p.points() {
        for y in q.points() {
            let mut z = x.clone();
            z.extend_from_slice(y);
            points.push(z);
        }
    }
    PointSet::new(dim, points).expect("dims consistent by construction")
}

/// Keep the points of `s` satisfying the slice polyhedron C_u: for each
/// letter r, the first d blocks sum with |u|_r to at most the last block,
///   Σ_{k<d} y_{mk+r} + |u|_{a_r} ≤ y_{md+r}.
pub fn intersect_constraint(s: &PointSet, u_content: &Content) -> Result<PointSet, GeomError> {
    let m = u_content.alphabet_size();
    if m == 0 || s.dim() % m != 0 || s.dim() / m < 2 {
        return Err(GeomError::BadShape(s.dim(), m));
    }
    let d = s.dim() / m - 1;
    let points = s
        .points()
        .iter()
        .filter(|y| {
            (0..m).all(|r| {
                let lhs: i64 = (0..d).map(|k| y[m * k + r]).sum::<i64>() + u_content.0[r];
                lhs <= y[m * d + r]
            })
        })
        .cloned()
        .collect();
    PointSet::new(s.dim(), points)
}

/// The invertible affine map Π: first md coordinates pass through; the last
/// m become full column sums shifted by the content of u.
pub fn pi_map(p: &[i64], u_content: &Content, m: usize, d: usize) -> Result<Vec<i64>, GeomError> {
    if u_content.alphabet_size() != m || p.len() != m * (d + 1) {
        return Err(GeomError::DimMismatch(m * (d + 1), p.len()));
    }
    let mut out = p[..m * d].to_vec();
    for r in 0..m {
        let col: i64 = (0..=d).map(|k| p[m * k + r]).sum();
        out.push(col + u_content.0[r]);
    }
    Ok(out)
}

/// Map Π over a whole set.
pub fn pi_image(s: &PointSet, u_content: &Content, m: usize, d: usize) -> Result<PointSet, GeomError> {
    let pts: Result<Vec<_>, _> = s.points().iter().map(|p| pi_map(p, u_content, m, d)).collect();
    PointSet::new(s.dim(), pts?)
}

/// Fixed battery of integer objectives: coordinate directions, the all-ones
/// vector, and a few deterministic pseudo-random small vectors.
pub(crate) fn objective_battery(dim: usize) -> Vec<Vec<i64>> {
    let mut objs = Vec::new();
    for i in 0..dim {
        let mut e = vec![0i64; dim];
        e[i] = 1;
        objs.push(e.clone());
        e[i] = -1;
        objs.push(e);
    }
    objs.push(vec![1; dim]);
    objs.push(vec![-1; dim]);
    let mut state = 0x9e3779b97f4a7c15u64;
    for _ in 0..8 {
        let mut v = Vec::with_capacity(dim);
        for _ in 0..dim {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            v.push(((state >> 33) % 21) as i64 - 10);
        }
        if v.iter().any(|&c| c != 0) {
            objs.push(v);
        }
    }
    objs
}

/// Is `p` a convex combination of `points`? Exact phase-1 simplex with
/// Bland's rule on the system
///   Σ λ_j q_j = p,  Σ λ_j = 1,  λ ≥ 0.
/// A fraction-free integer tableau (Bareiss pivoting) does the work; the
/// rare overflow falls back to BigRational.
pub(crate) fn in_convex_hull(p: &[i64], points: &[&[i64]]) -> bool {
    let n = points.len();
    if n == 0 {
        return false;
    }
    let d = p.len();
    if points.iter().any(|q| *q == p) {
        return true;
    }
    // bounding-box rejection
    for i in 0..d {
        let lo = points.iter().map(|q| q[i]).min().unwrap();
        let hi = points.iter().map(|q| q[i]).max().unwrap();
        if p[i] < lo || p[i] > hi {
            return false;
        }
    }
    match in_hull_integer(p, points) {
        Some(ans) => ans,
        None => in_hull_rational(p, points),
    }
}

/// Integer fraction-free simplex: the tableau stores δ times the true
/// values; each Bareiss pivot divides exactly by the previous δ. Returns
/// None if any product would overflow i128.
fn in_hull_integer(p: &[i64], points: &[&[i64]]) -> Option<bool> {
    let n = points.len();
    let d = p.len();
    let rows = d + 1;
    let rhs = n + rows;
    let cols = rhs + 1;

    let mut t: Vec<Vec<i128>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row: Vec<i128> = Vec::with_capacity(cols);
        for q in points {
            row.push(if i < d { q[i] as i128 } else { 1 });
        }
        row.extend(std::iter::repeat(0).take(rows));
        row.push(if i < d { p[i] as i128 } else { 1 });
        if row[rhs] < 0 {
            for x in &mut row {
                *x = -*x;
            }
        }
        row[n + i] = 1;
        t.push(row);
    }
    let mut obj = vec![0i128; cols];
    for row in &t {
        for j in (0..n).chain(std::iter::once(rhs)) {
            obj[j] = obj[j].checked_add(row[j])?;
        }
    }
    let mut basis: Vec<usize> = (n..n + rows).collect();
    let mut delta: i128 = 1;
    let mut iterations = 0usize;

    loop {
        // Dantzig's rule converges fast; switch to Bland's rule after a
        // while in case the aggressive choice ever cycles.
        iterations += 1;
        let enter = if iterations <= 500 {
            (0..n).filter(|&j| obj[j] > 0).max_by_key(|&j| obj[j])
        } else {
            (0..n).find(|&j| obj[j] > 0)
        };
        let Some(enter) = enter else {
            return Some(obj[rhs] == 0);
        };
        let mut leave: Option<usize> = None;
        for i in 0..rows {
            if t[i][enter] > 0 {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let lhs = t[i][rhs].checked_mul(t[l][enter])?;
                        let rhs_v = t[l][rhs].checked_mul(t[i][enter])?;
                        lhs < rhs_v || (lhs == rhs_v && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let li = leave?; // bounded system: a leaving row always exists
        let piv = t[li][enter];
        for i in 0..rows {
            if i == li {
                continue;
            }
            let f = t[i][enter];
            for j in 0..cols {
                let a = t[i][j].checked_mul(piv)?;
                let b = f.checked_mul(t[li][j])?;
                t[i][j] = a.checked_sub(b)? / delta;
            }
        }
        let f = obj[enter];
        for j in 0..cols {
            let a = obj[j].checked_mul(piv)?;
            let b = f.checked_mul(t[li][j])?;
            obj[j] = a.checked_sub(b)? / delta;
        }
        basis[li] = enter;
        delta = piv;
    }
}

/// BigRational fallback, same algorithm without overflow concerns.
fn in_hull_rational(p: &[i64], points: &[&[i64]]) -> bool {
    let n = points.len();
    let d = p.len();

    let rows = d + 1;
    let cols = n + rows + 1; // λ columns, artificial columns, rhs
    let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row: Vec<i64> = Vec::with_capacity(cols);
        for q in points {
            row.push(if i < d { q[i] } else { 1 });
        }
        row.extend(std::iter::repeat(0).take(rows));
        row.push(if i < d { p[i] } else { 1 });
        if *row.last().unwrap() < 0 {
            for x in &mut row {
                *x = -*x;
            }
        }
        let mut rrow: Vec<BigRational> = row.into_iter().map(rat).collect();
        rrow[n + i] = rat(1);
        t.push(rrow);
    }
    // objective: maximise −Σ artificials; with the artificial basis the
    // reduced-cost row is the sum of the constraint rows on λ columns
    let mut obj = vec![BigRational::zero(); cols];
    for row in &t {
        for j in (0..n).chain(std::iter::once(cols - 1)) {
            obj[j] += &row[j];
        }
    }
    let mut basis: Vec<usize> = (n..n + rows).collect();

    loop {
        // Bland: smallest λ column with positive reduced cost
        let Some(enter) = (0..n).find(|&j| obj[j].is_positive()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[cols - 1] / &row[enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(li) = leave else {
            // unbounded cannot happen for this bounded system
            return false;
        };
        let piv = t[li][enter].clone();
        for x in &mut t[li] {
            *x /= &piv;
        }
        for i in 0..rows {
            if i != li && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..cols {
                    let delta = &f * &t[li][j];
                    t[i][j] -= delta;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..cols {
                let delta = &f * &t[li][j];
                obj[j] -= delta;
            }
        }
        basis[li] = enter;
    }
    obj[cols - 1].is_zero()
}
