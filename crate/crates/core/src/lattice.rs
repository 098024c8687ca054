//! Exact rationals, primitive lattice vectors, continued fractions and
//! regularization of two-dimensional fans.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Formats as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse { pos: 0, msg: format!("invalid rational `{s}`") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse { pos: 0, msg: format!("zero denominator in `{s}`") });
    }
    Ok(Rat::new(n, d))
}

/// A rational number or positive infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Finite(Rat),
    Infinite,
}

impl ExtRat {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinite)
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
            (ExtRat::Finite(_), ExtRat::Infinite) => Ordering::Less,
            (ExtRat::Infinite, ExtRat::Finite(_)) => Ordering::Greater,
            (ExtRat::Infinite, ExtRat::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => f.write_str(&fmt_rat(r)),
            ExtRat::Infinite => f.write_str("inf"),
        }
    }
}

/// Vector `(c, d)` of the weight lattice. The slope of `(c, d)` is `d / c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub c: BigInt,
    pub d: BigInt,
}

impl LatticeVector {
    pub fn new(c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        LatticeVector { c: c.into(), d: d.into() }
    }

    pub fn e1() -> Self {
        LatticeVector::new(1, 0)
    }

    pub fn e2() -> Self {
        LatticeVector::new(0, 1)
    }

    pub fn is_primitive(&self) -> bool {
        self.c.gcd(&self.d).is_one()
    }

    pub fn slope(&self) -> ExtRat {
        if self.c.is_zero() {
            ExtRat::Infinite
        } else {
            ExtRat::Finite(Rat::new(self.d.clone(), self.c.clone()))
        }
    }

    pub fn add(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector { c: &self.c + &o.c, d: &self.d + &o.d }
    }

    pub fn det(&self, o: &LatticeVector) -> BigInt {
        &self.c * &o.d - &self.d * &o.c
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.d)
    }
}

/// Primitive vector `p(λ)` on the ray of slope `λ >= 0`.
pub fn primitive_of_slope(lambda: &ExtRat) -> Result<LatticeVector> {
    match lambda {
        ExtRat::Infinite => Ok(LatticeVector::e2()),
        ExtRat::Finite(r) => {
            if r.is_negative() {
                return Err(Error::Domain(format!("negative slope {}", fmt_rat(r))));
            }
            Ok(LatticeVector { c: r.denom().clone(), d: r.numer().clone() })
        }
    }
}

/// Whether `(u, v)` is a basis of the lattice.
pub fn is_regular_pair(u: &LatticeVector, v: &LatticeVector) -> Result<bool> {
    for w in [u, v] {
        if !w.is_primitive() {
            return Err(Error::Domain(format!("vector {w} is not primitive")));
        }
    }
    Ok(u.det(v).abs().is_one())
}

/// Strictly convex cone spanned by two primitive vectors of the first quadrant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone2 {
    pub u: LatticeVector,
    pub v: LatticeVector,
}

impl Cone2 {
    pub fn new(u: LatticeVector, v: LatticeVector) -> Result<Self> {
        for w in [&u, &v] {
            if !w.is_primitive() || w.c.is_negative() || w.d.is_negative() {
                return Err(Error::Domain(format!("{w} is not a primitive vector of the quadrant")));
            }
        }
        if u.det(&v).is_zero() {
            return Err(Error::Domain("degenerate cone".into()));
        }
        Ok(Cone2 { u, v })
    }

    pub fn is_regular(&self) -> bool {
        self.u.det(&self.v).abs().is_one()
    }
}

/// Canonical continued fraction `[a1; a2, ..., ak]` with last term `> 1`
/// unless the value is `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub terms: Vec<BigInt>,
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.terms.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", t.join(","))
    }
}

pub fn cf_expand(lambda: &Rat) -> Result<ContinuedFraction> {
    if !lambda.is_positive() {
        return Err(Error::Domain(format!("continued fraction of non-positive {}", fmt_rat(lambda))));
    }
    let mut terms = Vec::new();
    let (mut p, mut q) = (lambda.numer().clone(), lambda.denom().clone());
    while !q.is_zero() {
        let (a, r) = p.div_rem(&q);
        terms.push(a);
        p = q;
        q = r;
    }
    Ok(ContinuedFraction { terms })
}

pub fn cf_value(cf: &ContinuedFraction) -> Result<Rat> {
    let terms = &cf.terms;
    if terms.is_empty() {
        return Err(Error::Domain("empty continued fraction".into()));
    }
    if terms[0].is_negative() || terms[1..].iter().any(|a| !a.is_positive()) {
        return Err(Error::Domain(format!("invalid continued fraction {cf}")));
    }
    let mut acc = Rat::from_integer(terms[terms.len() - 1].clone());
    for a in terms[..terms.len() - 1].iter().rev() {
        if acc.is_zero() {
            return Err(Error::Domain(format!("invalid continued fraction {cf}")));
        }
        acc = Rat::from_integer(a.clone()) + acc.recip();
    }
    Ok(acc)
}

/// Apex slope of the smallest lotus containing `p(λ)` and `p(μ)`.
pub fn wedge(lambda: &Rat, mu: &Rat) -> Result<Rat> {
    let a = cf_expand(lambda)?.terms;
    let b = cf_expand(mu)?.terms;
    if a == b {
        return Ok(lambda.clone());
    }
    let j = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    // [a1..ak] is the one that is shorter or smaller at the first difference
    let (a, b) = if a.len() == j || (b.len() > j && a[j] < b[j]) { (a, b) } else { (b, a) };
    let k = a.len();
    let terms = if k <= j + 1 {
        a
    } else {
        let mut t = b[..j].to_vec();
        t.push(&a[j] + 1);
        t
    };
    cf_value(&ContinuedFraction { terms })
}

/// Slopes of the petal apexes met on the way from `1` to `λ`:
/// the values of `[1], [2], .., [a1], [a1,1], .., [a1,a2], ..`.
pub fn slow_approximations(lambda: &Rat) -> Result<Vec<Rat>> {
    let terms = cf_expand(lambda)?.terms;
    let mut out = Vec::new();
    for (i, a) in terms.iter().enumerate() {
        let mut step = BigInt::one();
        while &step <= a {
            let mut prefix = terms[..i].to_vec();
            prefix.push(step.clone());
            out.push(cf_value(&ContinuedFraction { terms: prefix })?);
            step += 1;
        }
    }
    Ok(out)
}

/// Regularization of the fan with the given interior rays: all interior
/// rays of the minimal regular refinement, in increasing order.
pub fn regularize(slopes: &[Rat]) -> Result<Vec<Rat>> {
    let mut apexes = BTreeSet::new();
    for s in slopes {
        if !s.is_positive() {
            return Err(Error::Domain(format!("slope {} is not positive", fmt_rat(s))));
        }
        apexes.extend(slow_approximations(s)?);
    }
    Ok(lateral_walk(&apexes))
}

/// In-order walk of the Farey subdivision restricted to `apexes`.
fn lateral_walk(apexes: &BTreeSet<Rat>) -> Vec<Rat> {
    enum Step {
        Visit(LatticeVector, LatticeVector),
        Emit(Rat),
    }
    let mut out = Vec::new();
    let mut stack = vec![Step::Visit(LatticeVector::e1(), LatticeVector::e2())];
    while let Some(step) = stack.pop() {
        match step {
            Step::Emit(s) => out.push(s),
            Step::Visit(f1, f2) => {
                let apex = f1.add(&f2);
                let s = Rat::new(apex.d.clone(), apex.c.clone());
                if !apexes.contains(&s) {
                    continue;
                }
                stack.push(Step::Visit(apex.clone(), f2));
                stack.push(Step::Emit(s));
                stack.push(Step::Visit(f1, apex));
            }
        }
    }
    out
}
