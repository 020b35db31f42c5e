//! Gauss linking and self-linking integrals of closed polylines.
//!
//! The two-point propagator is the pullback of the normalized area form on
//! `S²` along `(x, y) ↦ (x - y)/|x - y|`, with constant `1/4π` so that
//! linking numbers are integers. Integrals use the midpoint rule on pairs
//! of segments.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vec3 = [f64; 3];

pub const MIN_POINTS: usize = 8;
/// Segment pairs closer than this count as intersecting.
pub const INTERSECTION_TOLERANCE: f64 = 1e-9;
/// Outer-loop rows per work chunk; fixed so that sums are reproducible.
const CHUNK_ROWS: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfintError {
    #[error("a curve needs at least {MIN_POINTS} points, got {0}")]
    TooFewPoints(usize),
    #[error("points {0} and {1} coincide")]
    RepeatedPoint(usize, usize),
    #[error("framing has {got} vectors for {expected} points")]
    FramingLength { expected: usize, got: usize },
    #[error("framing vector {0} is zero or tangent")]
    BadFraming(usize),
    #[error("curve has no framing")]
    MissingFraming,
    #[error("curves intersect: minimum distance {0:e}")]
    CurvesIntersect(f64),
    #[error("invalid curve file: {0}")]
    Parse(String),
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn unit(a: Vec3) -> Vec3 {
    scale(a, 1.0 / norm(a))
}

/// A closed polyline, optionally with a normal vector at each point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamCurve {
    points: Vec<Vec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    framing: Option<Vec<Vec3>>,
}

impl ParamCurve {
    pub fn new(points: Vec<Vec3>, framing: Option<Vec<Vec3>>) -> Result<Self, ConfintError> {
        let c = Self { points, framing };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), ConfintError> {
        let n = self.points.len();
        if n < MIN_POINTS {
            return Err(ConfintError::TooFewPoints(n));
        }
        for i in 0..n {
            if norm(sub(self.points[(i + 1) % n], self.points[i])) == 0.0 {
                return Err(ConfintError::RepeatedPoint(i, (i + 1) % n));
            }
        }
        if let Some(f) = &self.framing {
            if f.len() != n {
                return Err(ConfintError::FramingLength {
                    expected: n,
                    got: f.len(),
                });
            }
            for (i, v) in f.iter().enumerate() {
                let t = unit(sub(self.points[(i + 1) % n], self.points[(i + n - 1) % n]));
                let len = norm(*v);
                if len.is_nan() || len <= 0.0 || norm(cross(*v, t)) < 1e-9 * len {
                    return Err(ConfintError::BadFraming(i));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, ConfintError> {
        let c: Self = serde_json::from_str(text).map_err(|e| ConfintError::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn framing(&self) -> Option<&[Vec3]> {
        self.framing.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Samples `f` at `t = 2πk/n`.
    pub fn sample(n: usize, f: impl Fn(f64) -> Vec3) -> Result<Self, ConfintError> {
        Self::new((0..n).map(|k| f(TAU * k as f64 / n as f64)).collect(), None)
    }

    /// Circle of radius `r` in the plane spanned by the orthonormal `u, v`.
    pub fn circle(n: usize, center: Vec3, u: Vec3, v: Vec3, r: f64) -> Result<Self, ConfintError> {
        Self::sample(n, |t| {
            add(center, add(scale(u, r * t.cos()), scale(v, r * t.sin())))
        })
    }

    /// The unit circle in the xy-plane, counterclockwise seen from `+z`.
    pub fn unit_circle(n: usize) -> Self {
        Self::circle(n, [0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0).expect("circle")
    }

    /// The `(p, q)` torus knot `((2 + cos qt) cos pt, (2 + cos qt) sin pt, -sin qt)`;
    /// for positive `p, q` all crossings of its xy-projection are positive.
    pub fn torus_knot(p: i64, q: i64, n: usize) -> Result<Self, ConfintError> {
        let (p, q) = (p as f64, q as f64);
        Self::sample(n, |t| {
            let r = 2.0 + (q * t).cos();
            [r * (p * t).cos(), r * (p * t).sin(), -(q * t).sin()]
        })
    }

    pub fn with_framing(&self, framing: Vec<Vec3>) -> Result<Self, ConfintError> {
        Self::new(self.points.clone(), Some(framing))
    }

    /// Central-difference unit tangent at point `i`.
    pub fn tangent(&self, i: usize) -> Vec3 {
        let n = self.points.len();
        unit(sub(self.points[(i + 1) % n], self.points[(i + n - 1) % n]))
    }

    /// Constant framing `v` projected off the tangent.
    pub fn constant_framing(&self, v: Vec3) -> Result<Self, ConfintError> {
        let f = (0..self.len()).map(|i| {
            let t = self.tangent(i);
            sub(v, scale(t, dot(v, t)))
        });
        self.with_framing(f.collect())
    }

    /// Blackboard framing for the projection to the xy-plane: `ẑ × T`.
    pub fn blackboard_framing(&self) -> Result<Self, ConfintError> {
        self.with_framing(
            (0..self.len())
                .map(|i| cross([0.0, 0.0, 1.0], self.tangent(i)))
                .collect(),
        )
    }

    /// Principal normals from discrete second differences.
    pub fn frenet_framing(&self) -> Result<Self, ConfintError> {
        let n = self.len();
        let f = (0..n).map(|i| {
            let acc = add(
                sub(self.points[(i + 1) % n], scale(self.points[i], 2.0)),
                self.points[(i + n - 1) % n],
            );
            let t = self.tangent(i);
            unit(sub(acc, scale(t, dot(acc, t))))
        });
        self.with_framing(f.collect())
    }

    /// For a circle about the z-axis: the framing turns `k` times around the
    /// tangent, starting radially outward.
    pub fn twisted_framing(&self, k: i64) -> Result<Self, ConfintError> {
        let n = self.len();
        let f = (0..n).map(|i| {
            let p = self.points[i];
            let radial = unit([p[0], p[1], 0.0]);
            let s = TAU * k as f64 * i as f64 / n as f64;
            add(scale(radial, s.cos()), [0.0, 0.0, -s.sin()])
        });
        self.with_framing(f.collect())
    }

    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        c.points.reverse();
        if let Some(f) = &mut c.framing {
            f.reverse();
        }
        c
    }

    /// Reflection `z ↦ -z`.
    pub fn mirrored(&self) -> Self {
        let flip = |v: &Vec3| [v[0], v[1], -v[2]];
        Self {
            points: self.points.iter().map(flip).collect(),
            framing: self.framing.as_ref().map(|f| f.iter().map(flip).collect()),
        }
    }

    /// Applies `x ↦ Rx + t`.
    pub fn transformed(&self, r: [[f64; 3]; 3], t: Vec3) -> Self {
        let lin = |v: &Vec3| [dot(r[0], *v), dot(r[1], *v), dot(r[2], *v)];
        Self {
            points: self.points.iter().map(|p| add(lin(p), t)).collect(),
            framing: self.framing.as_ref().map(|f| f.iter().map(lin).collect()),
        }
    }

    /// The curve pushed off along its framing by `eps` (unit framing vectors).
    pub fn displaced(&self, eps: f64) -> Result<Self, ConfintError> {
        let f = self.framing.as_ref().ok_or(ConfintError::MissingFraming)?;
        let pts = self
            .points
            .iter()
            .zip(f)
            .map(|(p, v)| add(*p, scale(unit(*v), eps)))
            .collect();
        Self::new(pts, None)
    }

    fn segments(&self) -> Vec<(Vec3, Vec3)> {
        let n = self.points.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.points[i], self.points[(i + 1) % n]);
                (scale(add(a, b), 0.5), sub(b, a))
            })
            .collect()
    }

    fn edges(&self) -> Vec<(Vec3, Vec3)> {
        let n = self.points.len();
        (0..n)
            .map(|i| (self.points[i], self.points[(i + 1) % n]))
            .collect()
    }
}

/// Distance between the segments `[p0, p1]` and `[q0, q1]`.
fn segment_distance(p0: Vec3, p1: Vec3, q0: Vec3, q1: Vec3) -> f64 {
    let d1 = sub(p1, p0);
    let d2 = sub(q1, q0);
    let r = sub(p0, q0);
    let (a, e, f) = (dot(d1, d1), dot(d2, d2), dot(d2, r));
    let c = dot(d1, r);
    let b = dot(d1, d2);
    let denom = a * e - b * b;
    let mut s = if denom > 1e-15 * a * e {
        ((b * f - c * e) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    norm(sub(add(p0, scale(d1, s)), add(q0, scale(d2, t))))
}

/// Smallest distance between a segment of `c1` and a segment of `c2`.
pub fn min_distance(c1: &ParamCurve, c2: &ParamCurve) -> f64 {
    let e2 = c2.edges();
    let rows: Vec<f64> = chunked_rows(c1.len(), |i| {
        let (p0, p1) = (c1.points[i], c1.points[(i + 1) % c1.len()]);
        e2.iter()
            .map(|&(q0, q1)| segment_distance(p0, p1, q0, q1))
            .fold(f64::INFINITY, f64::min)
    });
    rows.into_iter().fold(f64::INFINITY, f64::min)
}

/// Evaluates `row(i)` for every `i < n`, in fixed chunks spread over the
/// available threads; the result is in row order.
fn chunked_rows<T: Send>(n: usize, row: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let chunks: Vec<std::ops::Range<usize>> = (0..n)
        .step_by(CHUNK_ROWS)
        .map(|s| s..(s + CHUNK_ROWS).min(n))
        .collect();
    let workers = std::thread::available_parallelism()
        .map_or(1, |k| k.get())
        .min(chunks.len())
        .max(1);
    if workers == 1 {
        return (0..n).map(row).collect();
    }
    let mut results: Vec<Option<Vec<T>>> = (0..chunks.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let chunks = &chunks;
                let row = &row;
                scope.spawn(move || {
                    chunks
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(k, r)| (k, r.clone().map(row).collect::<Vec<T>>()))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (k, v) in h.join().expect("worker") {
                results[k] = Some(v);
            }
        }
    });
    results
        .into_iter()
        .flat_map(|r| r.expect("every chunk computed"))
        .collect()
}

fn pair_term(m1: Vec3, d1: Vec3, m2: Vec3, d2: Vec3) -> f64 {
    let r = sub(m1, m2);
    let len = norm(r);
    dot(r, cross(d1, d2)) / (len * len * len)
}

/// `(1/4π) ΣΣ (r₁ - r₂)·(dr₁ × dr₂)/|r₁ - r₂|³` over segment midpoints.
pub fn gauss_linking(c1: &ParamCurve, c2: &ParamCurve) -> Result<f64, ConfintError> {
    let d = min_distance(c1, c2);
    if d < INTERSECTION_TOLERANCE {
        return Err(ConfintError::CurvesIntersect(d));
    }
    let s1 = c1.segments();
    let s2 = c2.segments();
    let rows = chunked_rows(s1.len(), |i| {
        let (m1, d1) = s1[i];
        s2.iter()
            .map(|&(m2, d2)| pair_term(m1, d1, m2, d2))
            .sum::<f64>()
    });
    Ok(rows.iter().sum::<f64>() / (4.0 * PI))
}

/// Linking number of a framed curve with its push-off by `eps`.
pub fn framed_self_linking(c: &ParamCurve, eps: f64) -> Result<f64, ConfintError> {
    gauss_linking(c, &c.displaced(eps)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WritheReport {
    /// Gauss self-integral over pairs of distinct segments.
    pub writhe: f64,
    /// `∫ τ ds` of the discrete Frenet frame.
    pub total_torsion: f64,
}

impl WritheReport {
    /// `Wr + (1/2π)∫τ`, which approximates the self-linking of the Frenet
    /// framing.
    pub fn calugareanu_sum(&self) -> f64 {
        self.writhe + self.total_torsion / TAU
    }
}

/// Gauss self-integral with the diagonal excluded, together with the total
/// torsion.
pub fn writhe_integral(c: &ParamCurve) -> WritheReport {
    let s = c.segments();
    let rows = chunked_rows(s.len(), |i| {
        let (m1, d1) = s[i];
        s.iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &(m2, d2))| pair_term(m1, d1, m2, d2))
            .sum::<f64>()
    });
    WritheReport {
        writhe: rows.iter().sum::<f64>() / (4.0 * PI),
        total_torsion: total_torsion(c.points(), true),
    }
}

/// Sum of signed angles between consecutive discrete binormals
/// `b_i = d_{i-1} × d_i`; the sign is that of `d_i · (b_i × b_{i+1})`.
fn total_torsion(points: &[Vec3], closed: bool) -> f64 {
    let n = points.len();
    let seg = |i: usize| sub(points[(i + 1) % n], points[i % n]);
    let nseg = if closed { n } else { n - 1 };
    let binormal = |i: usize| unit(cross(seg((i + nseg - 1) % nseg), seg(i)));
    let range = if closed { 0..n } else { 1..nseg - 1 };
    range
        .map(|i| {
            let (b0, b1) = (binormal(i), binormal(i + 1));
            let d = unit(seg(i));
            let c = cross(b0, b1);
            dot(c, d).atan2(dot(b0, b1))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hopf(n: usize) -> (ParamCurve, ParamCurve) {
        let a = ParamCurve::unit_circle(n);
        let b =
            ParamCurve::circle(n, [1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 1.0).unwrap();
        (a, b)
    }

    /// Signed crossings of the xy-projections where `a` passes over `b`.
    fn over_crossings(a: &ParamCurve, b: &ParamCurve) -> i64 {
        let mut w = 0;
        for (p0, p1) in a.edges() {
            for (q0, q1) in b.edges() {
                let d1 = sub(p1, p0);
                let d2 = sub(q1, q0);
                let den = d1[0] * d2[1] - d1[1] * d2[0];
                let r = sub(q0, p0);
                let s = (r[0] * d2[1] - r[1] * d2[0]) / den;
                let t = (r[0] * d1[1] - r[1] * d1[0]) / den;
                if den.abs() < 1e-15 || !(0.0..1.0).contains(&s) || !(0.0..1.0).contains(&t) {
                    continue;
                }
                if p0[2] + s * d1[2] > q0[2] + t * d2[2] {
                    w += if den > 0.0 { 1 } else { -1 };
                }
            }
        }
        w
    }

    #[test]
    fn gauss_sign_matches_crossing_count() {
        let (a, b) = hopf(256);
        let tilt = [[1.0, 0.0, 0.0], [0.0, 0.8, -0.6], [0.0, 0.6, 0.8]];
        let (a, b) = (a.transformed(tilt, [0.0; 3]), b.transformed(tilt, [0.0; 3]));
        let lk = gauss_linking(&a, &b).unwrap();
        assert_eq!(lk.round() as i64, over_crossings(&a, &b));
        assert_eq!(lk.round() as i64, over_crossings(&b, &a));
    }

    /// Writhe of the xy-projection, read off from crossings of projected
    /// segments.
    fn projected_writhe(c: &ParamCurve) -> i64 {
        let e = c.edges();
        let n = e.len();
        let mut w = 0;
        for i in 0..n {
            for j in i + 1..n {
                let (p0, p1) = e[i];
                let (q0, q1) = e[j];
                let d1 = sub(p1, p0);
                let d2 = sub(q1, q0);
                let den = d1[0] * d2[1] - d1[1] * d2[0];
                if den.abs() < 1e-15 {
                    continue;
                }
                let r = sub(q0, p0);
                let s = (r[0] * d2[1] - r[1] * d2[0]) / den;
                let t = (r[0] * d1[1] - r[1] * d1[0]) / den;
                if !(0.0..1.0).contains(&s)
                    || !(0.0..1.0).contains(&t)
                    || (j == i + 1 || (i == 0 && j == n - 1))
                {
                    continue;
                }
                let z1 = p0[2] + s * d1[2];
                let z2 = q0[2] + t * d2[2];
                // over-strand direction × under-strand direction
                let (over, under) = if z1 > z2 { (d1, d2) } else { (d2, d1) };
                w += if over[0] * under[1] - over[1] * under[0] > 0.0 {
                    1
                } else {
                    -1
                };
            }
        }
        w
    }

    #[test]
    fn hopf_pair_links_once() {
        let (a, b) = hopf(512);
        let lk = gauss_linking(&a, &b).unwrap();
        assert!((lk.abs() - 1.0).abs() < 1e-3, "{lk}");
        let rev = gauss_linking(&a, &b.reversed()).unwrap();
        assert!((rev + lk).abs() < 1e-12);
        assert!((gauss_linking(&b, &a).unwrap() - lk).abs() < 1e-12);
    }

    #[test]
    fn distant_circles_do_not_link() {
        let a = ParamCurve::unit_circle(256);
        let b = ParamCurve::circle(
            256,
            [100.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0],
            1.0,
        )
        .unwrap();
        assert!(gauss_linking(&a, &b).unwrap().abs() < 1e-6);
    }

    #[test]
    fn intersecting_curves_are_rejected() {
        let a = ParamCurve::unit_circle(64);
        assert!(matches!(
            gauss_linking(&a, &a),
            Err(ConfintError::CurvesIntersect(_))
        ));
    }

    #[test]
    fn refinement_converges() {
        let mut prev = f64::INFINITY;
        for n in [32, 64, 128, 256] {
            let (a, b) = hopf(n);
            let err = (gauss_linking(&a, &b).unwrap().abs() - 1.0).abs();
            if prev > 1e-4 {
                assert!(err <= prev / 2.0, "n={n}: {err} vs {prev}");
            }
            prev = err;
        }
    }

    #[test]
    fn framings_of_the_circle() {
        let c = ParamCurve::unit_circle(512);
        let flat = c.constant_framing([0.0, 0.0, 1.0]).unwrap();
        assert!(framed_self_linking(&flat, 0.05).unwrap().abs() < 1e-3);
        for k in -2..=2 {
            let framed = c.twisted_framing(k).unwrap();
            let sl = framed_self_linking(&framed, 0.05).unwrap();
            assert!((sl - k as f64).abs() < 1e-2, "k={k}: {sl}");
        }
        assert!(writhe_integral(&c).writhe.abs() < 1e-6);
    }

    #[test]
    fn trefoil_blackboard_framing_matches_diagram_writhe() {
        let t = ParamCurve::torus_knot(2, 3, 1024).unwrap();
        let w = projected_writhe(&t);
        assert_eq!(
            w,
            crate::diagram::catalog_link("trefoil-right")
                .unwrap()
                .pd()
                .writhe()
        );
        let sl = framed_self_linking(&t.blackboard_framing().unwrap(), 0.05).unwrap();
        assert!((sl - w as f64).abs() < 0.1, "{sl} vs {w}");
    }

    #[test]
    fn calugareanu_on_the_torus_knot() {
        let t = ParamCurve::torus_knot(2, 3, 1024).unwrap();
        let report = writhe_integral(&t);
        let sl = framed_self_linking(&t.frenet_framing().unwrap(), 0.1).unwrap();
        assert!(
            (report.writhe - (sl - report.total_torsion / TAU)).abs() < 0.05,
            "{report:?} {sl}"
        );
        let m = writhe_integral(&t.mirrored());
        assert!((m.writhe + report.writhe).abs() < 1e-9);
    }

    #[test]
    fn helix_torsion_is_positive() {
        // right-handed helix (cos t, sin t, t/2) has torsion 0.5/1.25
        let pts: Vec<Vec3> = (0..400)
            .map(|k| k as f64 * 0.01)
            .map(|t| [t.cos(), t.sin(), 0.5 * t])
            .collect();
        let tau = total_torsion(&pts, false);
        let length = 1.25f64.sqrt() * 0.01 * 397.0;
        assert!((tau - 0.4 * length).abs() < 1e-2, "{tau}");
    }

    #[test]
    fn validation() {
        assert_eq!(
            ParamCurve::new(vec![[0.0; 3]; 4], None),
            Err(ConfintError::TooFewPoints(4))
        );
        let mut pts = ParamCurve::unit_circle(8).points().to_vec();
        pts[3] = pts[2];
        assert!(matches!(
            ParamCurve::new(pts, None),
            Err(ConfintError::RepeatedPoint(2, 3))
        ));
        let c = ParamCurve::unit_circle(8);
        let tangent: Vec<Vec3> = (0..8).map(|i| c.tangent(i)).collect();
        assert!(matches!(
            c.with_framing(tangent),
            Err(ConfintError::BadFraming(0))
        ));
        assert_eq!(
            framed_self_linking(&c, 0.1),
            Err(ConfintError::MissingFraming)
        );
        let json = c.twisted_framing(1).unwrap().to_json();
        assert_eq!(
            ParamCurve::from_json(&json).unwrap(),
            c.twisted_framing(1).unwrap()
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn rigid_motions_preserve_linking(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0, tx in -5.0f64..5.0) {
            let (p, q) = hopf(96);
            let before = gauss_linking(&p, &q).unwrap();
            // rotation from Euler angles
            let (sa, ca) = a.sin_cos();
            let (sb, cb) = b.sin_cos();
            let (sc, cc) = c.sin_cos();
            let rz = |s: f64, c: f64| [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]];
            let rx = |s: f64, c: f64| [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]];
            let mul = |x: [[f64; 3]; 3], y: [[f64; 3]; 3]| {
                let mut out = [[0.0; 3]; 3];
                for i in 0..3 { for j in 0..3 { out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum(); } }
                out
            };
            let r = mul(mul(rz(sa, ca), rx(sb, cb)), rz(sc, cc));
            let t = [tx, -tx / 2.0, 1.0];
            let after = gauss_linking(&p.transformed(r, t), &q.transformed(r, t)).unwrap();
            prop_assert!((before - after).abs() < 1e-9);
        }
    }
}
