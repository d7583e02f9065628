use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::Code;
use crate::error::{Error, Result};
use crate::matcore::{frac, snap_rational};

/// One admissible piece of an angle set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AngleElement {
    Interval { lo: f64, hi: f64 },
    Point { value: f64 },
}

impl AngleElement {
    fn lower(&self) -> f64 {
        match *self {
            AngleElement::Interval { lo, .. } => lo,
            AngleElement::Point { value } => value,
        }
    }

    pub fn upper(&self) -> f64 {
        match *self {
            AngleElement::Interval { hi, .. } => hi,
            AngleElement::Point { value } => value,
        }
    }

    /// Distance from `x` to this element (zero inside an interval).
    pub fn distance(&self, x: f64) -> f64 {
        match *self {
            AngleElement::Point { value } => (x - value).abs(),
            AngleElement::Interval { lo, hi } => {
                if x < lo {
                    lo - x
                } else if x > hi {
                    x - hi
                } else {
                    0.0
                }
            }
        }
    }
}

impl fmt::Display for AngleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleElement::Interval { lo, hi } => write!(f, "interval:{lo},{hi}"),
            AngleElement::Point { value } => write!(f, "point:{value}"),
        }
    }
}

/// An allowed inner-product set `L`: closed intervals and points inside `[-1, 1)`.
///
/// Elements are kept sorted by their lower end; an element's position is its
/// class id. A point matches within `tol`; intervals are inflated by `tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleSet {
    elements: Vec<AngleElement>,
    tol: f64,
}

impl AngleSet {
    pub fn new(mut elements: Vec<AngleElement>, tol: f64) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidParams("angle set needs at least one element".into()));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidParams(format!("tolerance must be positive, got {tol}")));
        }
        for e in &elements {
            let ok = match *e {
                AngleElement::Interval { lo, hi } => (-1.0..1.0).contains(&lo) && lo <= hi && hi < 1.0,
                AngleElement::Point { value } => (-1.0..1.0).contains(&value),
            };
            if !ok {
                return Err(Error::InvalidParams(format!("{e} does not lie in [-1, 1)")));
            }
        }
        elements.sort_by(|a, b| a.lower().total_cmp(&b.lower()).then(a.upper().total_cmp(&b.upper())));
        Ok(AngleSet { elements, tol })
    }

    pub fn points(values: &[f64], tol: f64) -> Result<Self> {
        Self::new(values.iter().map(|&value| AngleElement::Point { value }).collect(), tol)
    }

    pub fn interval(lo: f64, hi: f64, tol: f64) -> Result<Self> {
        Self::new(vec![AngleElement::Interval { lo, hi }], tol)
    }

    /// `[-1, -beta]` together with the points `alphas`.
    pub fn beta_with_points(beta: f64, alphas: &[f64], tol: f64) -> Result<Self> {
        let mut e = vec![AngleElement::Interval { lo: -1.0, hi: -beta }];
        e.extend(alphas.iter().map(|&value| AngleElement::Point { value }));
        Self::new(e, tol)
    }

    /// Parses `interval:lo,hi` and `point:x` terms joined by `+`.
    pub fn parse(spec: &str, tol: f64) -> Result<Self> {
        let mut elements = Vec::new();
        for term in spec.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number {s:?} in {term:?}")))
            };
            if let Some(rest) = term.strip_prefix("interval:") {
                let (lo, hi) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("interval needs lo,hi: {term:?}")))?;
                elements.push(AngleElement::Interval { lo: num(lo)?, hi: num(hi)? });
            } else if let Some(rest) = term.strip_prefix("point:") {
                elements.push(AngleElement::Point { value: num(rest)? });
            } else {
                return Err(Error::Parse(format!("unknown angle term {term:?}")));
            }
        }
        Self::new(elements, tol).map_err(|e| match e {
            Error::InvalidParams(m) => Error::Parse(m),
            other => other,
        })
    }

    pub fn elements(&self) -> &[AngleElement] {
        &self.elements
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.elements.iter().all(|e| matches!(e, AngleElement::Point { .. }))
    }

    pub fn max(&self) -> f64 {
        self.elements.iter().map(AngleElement::upper).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Best-matching class and its distance; `None` when no element is within `tol`.
    pub fn classify(&self, x: f64) -> Option<(usize, f64)> {
        let (class, d) = self.nearest(x);
        (d <= self.tol).then_some((class, d))
    }

    /// Nearest element (lowest class id on ties) and the distance to it.
    pub fn nearest(&self, x: f64) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (k, e) in self.elements.iter().enumerate() {
            let d = e.distance(x);
            if d < best.1 {
                best = (k, d);
            }
        }
        best
    }

    /// Class id of the most negative element, if it lies strictly below zero.
    pub fn negative_class(&self) -> Option<usize> {
        (self.elements[0].upper() < 0.0).then_some(0)
    }
}

impl fmt::Display for AngleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub inner: f64,
    /// Distance from `inner` to `L` (for duplicates, the gap to 1).
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
    /// Matched pair counts per element of `L`, in class order.
    pub histogram: Vec<(AngleElement, usize)>,
}

/// Classifies every unordered pair of `code` against `angles`.
///
/// A pair within `tol` of inner product 1 is a duplicate line and always a violation.
pub fn validate_code(code: &Code, angles: &AngleSet) -> ValidationReport {
    let mut counts = vec![0usize; angles.len()];
    let mut violations = Vec::new();
    let n = code.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let g = code.inner(i, j);
            if g >= 1.0 - angles.tol() {
                violations.push(Violation { i, j, inner: g, distance: 1.0 - g });
                continue;
            }
            match angles.classify(g) {
                Some((k, _)) => counts[k] += 1,
                None => violations.push(Violation { i, j, inner: g, distance: angles.nearest(g).1 }),
            }
        }
    }
    ValidationReport {
        pass: violations.is_empty(),
        violations,
        histogram: angles.elements().iter().copied().zip(counts).collect(),
    }
}

/// The projection parameters: `epsilon = 1/(t + 1/alpha)` and `sigma = 2 alpha/(1 - alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleParams {
    pub alpha: f64,
    pub t: usize,
    pub epsilon: f64,
    pub sigma: f64,
}

impl AngleParams {
    pub fn new(alpha: f64, t: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParams(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        if t == 0 {
            return Err(Error::InvalidParams("t must be positive".into()));
        }
        Ok(AngleParams { alpha, t, epsilon: Self::epsilon_of(alpha, t), sigma: Self::sigma_of(alpha) })
    }

    fn epsilon_of(alpha: f64, t: usize) -> f64 {
        1.0 / (t as f64 + 1.0 / alpha)
    }

    fn sigma_of(alpha: f64) -> f64 {
        2.0 * alpha / (1.0 - alpha)
    }

    /// True iff the stored epsilon and sigma equal their recomputed values exactly.
    pub fn is_consistent(&self) -> bool {
        self.epsilon == Self::epsilon_of(self.alpha, self.t) && self.sigma == Self::sigma_of(self.alpha)
    }

    /// The value a negative edge takes after projection, `-sigma (1 - epsilon) + epsilon`.
    pub fn negative_value(&self) -> f64 {
        -self.sigma * (1.0 - self.epsilon) + self.epsilon
    }

    /// Exact `(alpha, epsilon, sigma)` when `alpha` is a small-denominator fraction.
    pub fn exact(&self) -> Option<(BigRational, BigRational, BigRational)> {
        let alpha = snap_rational(self.alpha)?;
        let one = frac(1, 1);
        let t = frac(self.t as i64, 1);
        let epsilon = &one / (t + &one / &alpha);
        let sigma = frac(2, 1) * &alpha / (&one - &alpha);
        Some((alpha, epsilon, sigma))
    }
}

/// `L(alpha, t) = { -sigma (1 - epsilon) + epsilon, epsilon }`.
pub fn angle_set_after_projection(params: &AngleParams, tol: f64) -> Result<AngleSet> {
    AngleSet::points(&[params.negative_value(), params.epsilon], tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis3() -> Code {
        Code::new(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap()
    }

    #[test]
    fn parse_grammar() {
        let l = AngleSet::parse("point:0.5+interval:-1,-0.25", 1e-9).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.elements()[0], AngleElement::Interval { lo: -1.0, hi: -0.25 });
        assert_eq!(l.negative_class(), Some(0));
        assert_eq!(AngleSet::parse(&l.to_string(), 1e-9).unwrap(), l);
        assert!(matches!(AngleSet::parse("pt:1", 1e-9), Err(Error::Parse(_))));
        assert!(matches!(AngleSet::parse("point:1.0", 1e-9), Err(Error::Parse(_))));
        assert!(matches!(AngleSet::parse("interval:0.5,0.1", 1e-9), Err(Error::Parse(_))));
        assert!(AngleSet::parse("", 1e-9).is_err());
    }

    #[test]
    fn basis_against_half_fails() {
        let r = validate_code(&basis3(), &AngleSet::points(&[0.5], 1e-9).unwrap());
        assert!(!r.pass);
        assert_eq!(r.violations.len(), 3);
        assert!(r.violations.iter().all(|v| (v.distance - 0.5).abs() < 1e-15));
        let r = validate_code(&basis3(), &AngleSet::points(&[0.0], 1e-9).unwrap());
        assert!(r.pass);
        assert_eq!(r.histogram[0].1, 3);
    }

    #[test]
    fn interval_inflated_by_tol() {
        let l = AngleSet::interval(-1.0, -0.25, 1e-9).unwrap();
        assert!(l.classify(-0.25 + 5e-10).is_some());
        assert!(l.classify(-0.25 + 5e-9).is_none());
    }

    #[test]
    fn duplicates_are_violations() {
        let c = Code::new(2, vec![vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let r = validate_code(&c, &AngleSet::interval(-1.0, 0.9, 1e-9).unwrap());
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn projected_angle_sets() {
        let p = AngleParams::new(1.0 / 3.0, 2).unwrap();
        assert!(p.is_consistent());
        assert!((p.epsilon - 0.2).abs() < 1e-15 && (p.sigma - 1.0).abs() < 1e-15);
        let l = angle_set_after_projection(&p, 1e-9).unwrap();
        assert!(l.classify(-0.6).is_some() && l.classify(0.2).is_some());
        let (a, e, s) = p.exact().unwrap();
        assert_eq!((a, e, s), (frac(1, 3), frac(1, 5), frac(1, 1)));

        let p = AngleParams::new(0.2, 10).unwrap();
        assert!((p.epsilon - 1.0 / 15.0).abs() < 1e-15);
        assert!((p.sigma - 0.5).abs() < 1e-15);
        assert!((p.negative_value() + 0.4).abs() < 1e-15);
        let (_, e, s) = p.exact().unwrap();
        assert_eq!(-&s * (frac(1, 1) - &e) + &e, frac(-2, 5));

        let p = AngleParams::new(0.2, 1_000_000).unwrap();
        assert!(p.epsilon.abs() < 1e-5);
        assert!((p.negative_value() + p.sigma).abs() < 1e-5);

        let mut bad = AngleParams::new(0.2, 3).unwrap();
        bad.epsilon += 1e-12;
        assert!(!bad.is_consistent());
        assert!(AngleParams::new(1.0, 3).is_err());
        assert!(AngleParams::new(0.5, 0).is_err());
    }
}
