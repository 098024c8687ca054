//! Newton-Puiseux series with exact coefficients.
//!
//! A coefficient is a `PhasedRational`: a rational magnitude times a root of
//! unity `exp(2πi·φ)` with rational phase `φ ∈ [0, 1)`. This is closed under
//! multiplication and Galois conjugation, which is all the algorithms use.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{fmt_rat, ExtRat, Rat};

fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhasedRational {
    magnitude: Rat,
    phase: Rat,
}

impl PhasedRational {
    pub fn zero() -> Self {
        PhasedRational { magnitude: Rat::zero(), phase: Rat::zero() }
    }

    pub fn one() -> Self {
        PhasedRational { magnitude: Rat::one(), phase: Rat::zero() }
    }

    /// `magnitude · exp(2πi·phase)`; the phase is reduced mod 1.
    pub fn new(magnitude: Rat, phase: Rat) -> Result<Self> {
        if magnitude.is_negative() {
            return Err(Error::Domain(format!("negative magnitude {}", fmt_rat(&magnitude))));
        }
        if magnitude.is_zero() {
            return Ok(Self::zero());
        }
        Ok(PhasedRational { magnitude, phase: frac(&phase) })
    }

    pub fn from_rational(r: Rat) -> Self {
        if r.is_negative() {
            PhasedRational { magnitude: -r, phase: Rat::new(1.into(), 2.into()) }
        } else {
            PhasedRational { magnitude: r, phase: Rat::zero() }
        }
    }

    pub fn magnitude(&self) -> &Rat {
        &self.magnitude
    }

    pub fn phase(&self) -> &Rat {
        &self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude.is_zero()
    }

    /// The value as a rational number, when the phase is `0` or `1/2`.
    pub fn to_rational(&self) -> Option<Rat> {
        if self.phase.is_zero() {
            Some(self.magnitude.clone())
        } else if self.phase == Rat::new(1.into(), 2.into()) {
            Some(-self.magnitude.clone())
        } else {
            None
        }
    }

    pub fn mul(&self, o: &PhasedRational) -> PhasedRational {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        PhasedRational { magnitude: &self.magnitude * &o.magnitude, phase: frac(&(&self.phase + &o.phase)) }
    }

    pub fn pow(&self, k: &BigInt) -> Result<PhasedRational> {
        if self.is_zero() {
            if k.is_positive() {
                return Ok(Self::zero());
            }
            return Err(Error::Domain("non-positive power of zero".into()));
        }
        let e = u32::try_from(k.abs()).map_err(|_| Error::Domain("exponent too large".into()))?;
        let mut m = num_traits::pow(self.magnitude.clone(), e as usize);
        if k.is_negative() {
            m = m.recip();
        }
        let phase = frac(&(&self.phase * Rat::from_integer(k.clone())));
        Ok(PhasedRational { magnitude: m, phase })
    }

    /// Multiplies by `exp(2πi·shift)`.
    pub fn rotate(&self, shift: &Rat) -> PhasedRational {
        if self.is_zero() {
            return Self::zero();
        }
        PhasedRational { magnitude: self.magnitude.clone(), phase: frac(&(&self.phase + shift)) }
    }
}

impl fmt::Display for PhasedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) => f.write_str(&fmt_rat(&r)),
            None => write!(f, "({}@{})", fmt_rat(&self.magnitude), fmt_rat(&self.phase)),
        }
    }
}

/// Finite Puiseux series `Σ a_e x^e` with non-negative rational exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PuiseuxSeries {
    terms: BTreeMap<Rat, PhasedRational>,
}

impl PuiseuxSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Rat, PhasedRational)>>(terms: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, a) in terms {
            if e.is_negative() {
                return Err(Error::Domain(format!("negative exponent {}", fmt_rat(&e))));
            }
            if a.is_zero() {
                return Err(Error::Domain(format!("zero coefficient at x^{}", fmt_rat(&e))));
            }
            if map.insert(e.clone(), a).is_some() {
                return Err(Error::Domain(format!("repeated exponent {}", fmt_rat(&e))));
            }
        }
        Ok(PuiseuxSeries { terms: map })
    }

    /// Convenience constructor from rational coefficients.
    pub fn from_rational_terms(terms: &[(Rat, Rat)]) -> Result<Self> {
        Self::from_terms(terms.iter().map(|(e, a)| (e.clone(), PhasedRational::from_rational(a.clone()))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &PhasedRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Rat) -> Option<&PhasedRational> {
        self.terms.get(e)
    }

    pub fn leading(&self) -> Option<(&Rat, &PhasedRational)> {
        self.terms.iter().next()
    }

    pub fn order(&self) -> ExtRat {
        match self.leading() {
            Some((e, _)) => ExtRat::Finite(e.clone()),
            None => ExtRat::Infinite,
        }
    }

    /// Least common denominator of the exponents.
    pub fn index(&self) -> BigInt {
        self.terms.keys().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// Replaces `x^(1/n)` by `ε x^(1/n)` with `ε = exp(2πi·j/n)`.
    pub fn conjugate(&self, j: &BigInt) -> PuiseuxSeries {
        let jr = Rat::from_integer(j.clone());
        PuiseuxSeries { terms: self.terms.iter().map(|(e, a)| (e.clone(), a.rotate(&(&jr * e)))).collect() }
    }

    /// Terms with exponent at most `bound`.
    pub fn truncate(&self, bound: &Rat) -> PuiseuxSeries {
        PuiseuxSeries { terms: self.terms.range(..=bound.clone()).map(|(e, a)| (e.clone(), a.clone())).collect() }
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, a)) in self.terms.iter().enumerate() {
            let (neg, coef) = match a.to_rational() {
                Some(r) if r.is_negative() => (true, fmt_rat(&-r)),
                Some(r) => (false, fmt_rat(&r)),
                None => (false, a.to_string()),
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if coef != "1" {
                f.write_str(&coef)?;
            }
            f.write_str("x")?;
            if e.is_integer() {
                if !e.is_one() {
                    write!(f, "^{}", e.numer())?;
                }
            } else {
                write!(f, "^({}/{})", e.numer(), e.denom())?;
            }
        }
        Ok(())
    }
}

/// A branch `Z(y - η(x))` given by one of its Newton-Puiseux roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub label: String,
    pub series: PuiseuxSeries,
}

impl Branch {
    /// The zero series is allowed and stands for `Z(y)`.
    pub fn new(label: impl Into<String>, series: PuiseuxSeries) -> Result<Self> {
        let label = label.into();
        if let ExtRat::Finite(o) = series.order() {
            if !o.is_positive() {
                return Err(Error::Domain(format!("branch `{label}` does not pass through the origin")));
            }
        }
        Ok(Branch { label, series })
    }

    pub fn parse(label: impl Into<String>, text: &str) -> Result<Self> {
        Branch::new(label, parse_series(text)?)
    }

    pub fn index(&self) -> BigInt {
        self.series.index()
    }
}

// ---------------------------------------------------------------------------
// parsing

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn signed_digits(&mut self) -> Result<BigInt> {
        let neg = self.eat(b'-');
        let n = self.digits()?;
        Ok(if neg { -n } else { n })
    }

    /// `p` or `p/q`; the slash must be followed by digits.
    fn rational(&mut self) -> Result<Rat> {
        let p = self.signed_digits()?;
        let save = self.pos;
        if self.eat(b'/') {
            self.ws();
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let q = self.digits()?;
                if q.is_zero() {
                    return self.err("zero denominator");
                }
                return Ok(Rat::new(p, q));
            }
            self.pos = save;
        }
        Ok(Rat::from_integer(p))
    }

    fn coefficient(&mut self) -> Result<Option<PhasedRational>> {
        self.ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let m = self.rational()?;
                self.expect(b'@')?;
                let phase = self.rational()?;
                self.expect(b')')?;
                if !m.is_positive() {
                    return self.err("magnitude must be positive");
                }
                Ok(Some(PhasedRational::new(m, phase)?))
            }
            Some(c) if c.is_ascii_digit() => Ok(Some(PhasedRational::from_rational(self.rational()?))),
            _ => Ok(None),
        }
    }

    fn power(&mut self) -> Result<Rat> {
        if !self.eat(b'^') {
            return Ok(Rat::one());
        }
        if self.eat(b'(') {
            let r = self.rational()?;
            self.expect(b')')?;
            Ok(r)
        } else {
            Ok(Rat::from_integer(self.signed_digits()?))
        }
    }
}

/// Parses `term (("+"|"-") term)*` with `term := coeff? "x" power?`.
/// The single token `0` denotes the zero series.
pub fn parse_series(text: &str) -> Result<PuiseuxSeries> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    cur.ws();
    if text.trim() == "0" {
        return Ok(PuiseuxSeries::zero());
    }
    let mut terms: BTreeMap<Rat, PhasedRational> = BTreeMap::new();
    let mut negate = cur.eat(b'-');
    loop {
        let start = cur.pos;
        let coef = cur.coefficient()?.unwrap_or_else(PhasedRational::one);
        cur.eat(b'*');
        if !cur.eat(b'x') {
            return cur.err("expected `x`");
        }
        let e = cur.power()?;
        if coef.is_zero() {
            return Err(Error::Parse { pos: start, msg: "zero coefficient".into() });
        }
        if e.is_negative() {
            return Err(Error::Parse { pos: start, msg: "negative exponent".into() });
        }
        let coef = if negate { coef.mul(&PhasedRational::from_rational(-Rat::one())) } else { coef };
        if terms.insert(e.clone(), coef).is_some() {
            return Err(Error::Parse { pos: start, msg: format!("repeated exponent {}", fmt_rat(&e)) });
        }
        cur.ws();
        match cur.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(c) => return cur.err(format!("unexpected `{}`", c as char)),
        }
        cur.pos += 1;
    }
    Ok(PuiseuxSeries { terms })
}

// ---------------------------------------------------------------------------
// invariants of branches

pub fn order(s: &PuiseuxSeries) -> ExtRat {
    s.order()
}

pub fn index(s: &PuiseuxSeries) -> BigInt {
    s.index()
}

/// Exponents at which the common denominator jumps.
pub fn characteristic_exponents(s: &PuiseuxSeries) -> Vec<Rat> {
    let mut l = BigInt::one();
    let mut out = Vec::new();
    for e in s.terms.keys() {
        let m = l.lcm(e.denom());
        if m != l {
            out.push(e.clone());
            l = m;
        }
    }
    out
}

/// Newton pairs `(c_j, d_j)`: the slopes met along the resolution of the
/// branch are `d_j / c_j`.
pub fn newton_pairs(s: &PuiseuxSeries) -> Vec<(BigInt, BigInt)> {
    let mut big_n = BigInt::one();
    let mut prev_m = BigInt::zero();
    let mut out = Vec::new();
    for e in characteristic_exponents(s) {
        let n_next = big_n.lcm(e.denom());
        let n_j = &n_next / &big_n;
        let m_j = (&e * Rat::from_integer(n_next.clone())).to_integer();
        out.push((n_j.clone(), &m_j - &n_j * &prev_m));
        prev_m = m_j;
        big_n = n_next;
    }
    out
}

/// Multiplicity at the origin: `min(n, n·ν)`.
pub fn multiplicity(s: &PuiseuxSeries) -> BigInt {
    let n = s.index();
    match s.order() {
        ExtRat::Infinite => BigInt::one(),
        ExtRat::Finite(v) => {
            let nv = (&v * Rat::from_integer(n.clone())).to_integer();
            n.min(nv)
        }
    }
}

/// Coincidence order `k(a, b) = max_j ν(a - conj_j b)`, over the conjugates
/// of `b`. `∞` exactly when `a` and `b` define the same branch.
pub fn coincidence_order(a: &PuiseuxSeries, b: &PuiseuxSeries) -> ExtRat {
    // admissible conjugation indices form a coset j ≡ r (mod g)
    let mut r = BigInt::zero();
    let mut g = BigInt::one();
    let mut ia = a.terms.iter().peekable();
    let mut ib = b.terms.iter().peekable();
    loop {
        let (e, x, y) = match (ia.peek(), ib.peek()) {
            (None, None) => return ExtRat::Infinite,
            (Some((e, _)), None) | (None, Some((e, _))) => return ExtRat::Finite((*e).clone()),
            (Some((ea, x)), Some((eb, y))) => {
                if ea != eb {
                    return ExtRat::Finite(std::cmp::min(*ea, *eb).clone());
                }
                ((*ea).clone(), (*x).clone(), (*y).clone())
            }
        };
        ia.next();
        ib.next();
        if x.magnitude != y.magnitude {
            return ExtRat::Finite(e);
        }
        // need j·e ≡ φx - φy (mod 1), i.e. j·p ≡ t (mod q) with e = p/q
        let t = (&x.phase - &y.phase) * Rat::from_integer(e.denom().clone());
        if !t.is_integer() {
            return ExtRat::Finite(e);
        }
        let t = t.to_integer();
        let (p, q) = (e.numer(), e.denom());
        // j = r + g·u: g·p·u ≡ t - r·p (mod q)
        let rhs = (&t - &r * p).mod_floor(q);
        let gp = (&g * p).mod_floor(q);
        let h = gp.gcd(q);
        if !(&rhs % &h).is_zero() {
            return ExtRat::Finite(e);
        }
        let q_h = q / &h;
        if !q_h.is_one() {
            let inv = mod_inverse(&(&gp / &h), &q_h);
            let u = ((&rhs / &h) * inv).mod_floor(&q_h);
            r += &g * u;
        }
        g *= &q_h;
        r = r.mod_floor(&g);
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let eg = a.extended_gcd(m);
    debug_assert!(eg.gcd.is_one());
    eg.x.mod_floor(m)
}

/// Conjugation index `j` (mod `c`) with `conj_j(s)` having leading
/// coefficient `alpha`, where `order(s) = d/c`.
pub fn normalizing_shift(s: &PuiseuxSeries, slope: &Rat, alpha: &PhasedRational) -> Result<BigInt> {
    let (e, lead) = s.leading().ok_or_else(|| Error::Domain("empty series has no leading term".into()))?;
    if e != slope {
        return Err(Error::Domain(format!("order {} differs from slope {}", fmt_rat(e), fmt_rat(slope))));
    }
    let (d, c) = (slope.numer(), slope.denom());
    if lead.pow(c)? != alpha.pow(c)? {
        return Err(Error::Domain(format!("{alpha} is not a leading coefficient of a conjugate")));
    }
    if c.is_one() {
        return Ok(BigInt::zero());
    }
    let t = ((&alpha.phase - &lead.phase) * Rat::from_integer(c.clone())).to_integer();
    Ok((t * mod_inverse(&d.mod_floor(c), c)).mod_floor(c))
}

/// Series of the strict transform in the chart of the exceptional curve of
/// slope `d/c`: conjugates `s` to leading coefficient `alpha`, drops the
/// leading term and maps each exponent `e` to `c·e - d`.
pub fn renormalize(s: &PuiseuxSeries, slope: &Rat, alpha: &PhasedRational) -> Result<PuiseuxSeries> {
    renormalize_with_shift(s, slope, alpha).map(|(r, _)| r)
}

/// As [`renormalize`], also returning the conjugation index used.
pub fn renormalize_with_shift(
    s: &PuiseuxSeries,
    slope: &Rat,
    alpha: &PhasedRational,
) -> Result<(PuiseuxSeries, BigInt)> {
    if !slope.is_positive() {
        return Err(Error::Domain(format!("slope {} is not positive", fmt_rat(slope))));
    }
    let j = normalizing_shift(s, slope, alpha)?;
    let conj = s.conjugate(&j);
    let c = Rat::from_integer(slope.denom().clone());
    let d = Rat::from_integer(slope.numer().clone());
    let terms = conj.terms.iter().filter(|(e, _)| *e > slope).map(|(e, a)| (&c * e - &d, a.clone())).collect();
    Ok((PuiseuxSeries { terms }, j))
}

/// `(ord, strict_mult)` of the exceptional divisor of slope `d/c` along the
/// branch: `ord = d·n` and `strict_mult = n / c`.
pub fn exceptional_data(s: &PuiseuxSeries, slope: &Rat) -> Result<(BigInt, BigInt)> {
    match s.order() {
        ExtRat::Finite(o) if &o == slope => {}
        o => return Err(Error::Domain(format!("order {o} differs from slope {}", fmt_rat(slope)))),
    }
    let n = s.index();
    Ok((slope.numer() * &n, n / slope.denom()))
}

/// Representative of the Galois orbit whose coefficients, read by increasing
/// exponent, are lexicographically smallest as `(phase, magnitude)` pairs.
pub fn canonical_representative(s: &PuiseuxSeries) -> PuiseuxSeries {
    let n = s.index();
    let key = |t: &PuiseuxSeries| -> Vec<(Rat, Rat)> {
        t.terms.values().map(|a| (a.phase.clone(), a.magnitude.clone())).collect()
    };
    let mut best = s.clone();
    let mut best_key = key(s);
    let mut j = BigInt::one();
    while j < n {
        let c = s.conjugate(&j);
        let k = key(&c);
        if k < best_key {
            best = c;
            best_key = k;
        }
        j += 1;
    }
    best
}
