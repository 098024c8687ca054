//! Newton polygons, their tropical functions and Minkowski decompositions.
//!
//! Polygons live in the first quadrant of the exponent plane and are stored by
//! their vertices, starting at the end near the vertical axis. The region is
//! always the convex hull plus the positive quadrant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{fmt_rat, ExtRat, LatticeVector, Rat};
use crate::puiseux::{coincidence_order, Branch, PhasedRational, PuiseuxSeries};

pub type Point = (Rat, Rat);

fn fmt_point(p: &Point) -> String {
    format!("({},{})", fmt_rat(&p.0), fmt_rat(&p.1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPoint {
    pub a: Rat,
    pub b: Rat,
    pub coeff: Option<PhasedRational>,
}

/// Support of a series in `x, y`, optionally with coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Support {
    points: BTreeMap<Point, Option<PhasedRational>>,
}

impl Support {
    pub fn new<I: IntoIterator<Item = SupportPoint>>(points: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for p in points {
            if p.a.is_negative() || p.b.is_negative() {
                return Err(Error::Domain(format!("exponent {} outside the quadrant", fmt_point(&(p.a, p.b)))));
            }
            if matches!(&p.coeff, Some(c) if c.is_zero()) {
                continue;
            }
            let key = (p.a, p.b);
            if map.contains_key(&key) {
                return Err(Error::Domain(format!("repeated exponent {}", fmt_point(&key))));
            }
            map.insert(key, p.coeff);
        }
        Ok(Support { points: map })
    }

    /// Support with integer exponents and rational coefficients.
    pub fn from_integer_terms(terms: &[(i64, i64, i64)]) -> Result<Self> {
        Support::new(terms.iter().map(|&(a, b, c)| SupportPoint {
            a: Rat::from_integer(a.into()),
            b: Rat::from_integer(b.into()),
            coeff: Some(PhasedRational::from_rational(Rat::from_integer(c.into()))),
        }))
    }

    pub fn points(&self) -> impl Iterator<Item = (&Point, &Option<PhasedRational>)> {
        self.points.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn coefficient(&self, p: &Point) -> Option<&PhasedRational> {
        self.points.get(p).and_then(|c| c.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<Point>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<(Point, Point)> {
        self.vertices.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    }

    /// Polygon with the given vertex list, checked for convexity.
    pub fn from_vertices(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Domain("polygon without vertices".into()));
        }
        let p = NewtonPolygon { vertices };
        let monotone = p.vertices.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1);
        if !monotone || !newton_fan(&p).windows(2).all(|s| s[0] < s[1]) {
            return Err(Error::Domain("vertices do not bound a Newton polygon".into()));
        }
        Ok(p)
    }

    fn start(&self) -> &Point {
        &self.vertices[0]
    }

    fn edge_vectors(&self) -> Vec<Point> {
        self.vertices.windows(2).map(|w| (&w[1].0 - &w[0].0, &w[1].1 - &w[0].1)).collect()
    }
}

fn cross(o: &Point, p: &Point, q: &Point) -> Rat {
    (&p.0 - &o.0) * (&q.1 - &o.1) - (&p.1 - &o.1) * (&q.0 - &o.0)
}

fn hull_of(points: impl IntoIterator<Item = Point>) -> Result<NewtonPolygon> {
    // minimal b for each a, then keep only strictly decreasing b
    let mut best: BTreeMap<Rat, Rat> = BTreeMap::new();
    for (a, b) in points {
        best.entry(a)
            .and_modify(|v| {
                if b < *v {
                    *v = b.clone()
                }
            })
            .or_insert(b);
    }
    if best.is_empty() {
        return Err(Error::Domain("empty support".into()));
    }
    let mut frontier: Vec<Point> = Vec::new();
    for (a, b) in best {
        if frontier.last().is_none_or(|l| b < l.1) {
            frontier.push((a, b));
        }
    }
    let mut hull: Vec<Point> = Vec::new();
    for p in frontier {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= Rat::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    Ok(NewtonPolygon { vertices: hull })
}

pub fn polygon_from_support(s: &Support) -> Result<NewtonPolygon> {
    hull_of(s.points.keys().cloned())
}

/// `min_{m ∈ S} ⟨w, m⟩`.
pub fn trop_eval(s: &Support, w: &LatticeVector) -> Result<Rat> {
    check_weight(w)?;
    s.points.keys().map(|m| pair(w, m)).min().ok_or_else(|| Error::Domain("empty support".into()))
}

/// The same minimum, read off the vertices of a polygon.
pub fn trop_eval_polygon(p: &NewtonPolygon, w: &LatticeVector) -> Result<Rat> {
    check_weight(w)?;
    Ok(p.vertices.iter().map(|m| pair(w, m)).min().expect("polygon has a vertex"))
}

fn check_weight(w: &LatticeVector) -> Result<()> {
    if w.c.is_negative() || w.d.is_negative() {
        return Err(Error::Domain(format!("weight {w} outside the quadrant")));
    }
    Ok(())
}

fn pair(w: &LatticeVector, m: &Point) -> Rat {
    Rat::from_integer(w.c.clone()) * &m.0 + Rat::from_integer(w.d.clone()) * &m.1
}

/// Slopes of the rays orthogonal to the compact edges, increasing.
pub fn newton_fan(p: &NewtonPolygon) -> Vec<Rat> {
    p.edge_vectors().into_iter().map(|(da, db)| da / -db).collect()
}

/// Restriction of the series to a compact edge, read from the vertex with
/// the larger first coordinate: `Σ_k coeff(m0 + k·φ) v^k`.
pub fn edge_restriction(s: &Support, edge: (&Point, &Point)) -> Result<Vec<Rat>> {
    let p = polygon_from_support(s)?;
    let (u, v) = edge;
    let is_edge = p.vertices.windows(2).any(|w| (&w[0] == u && &w[1] == v) || (&w[0] == v && &w[1] == u));
    if !is_edge {
        return Err(Error::Domain(format!("{} - {} is not a compact edge", fmt_point(u), fmt_point(v))));
    }
    restrict(s, u, v)
}

fn restrict(s: &Support, u: &Point, v: &Point) -> Result<Vec<Rat>> {
    let (m0, m1) = if u.0 > v.0 { (u, v) } else { (v, u) };
    if [&m0.0, &m0.1, &m1.0, &m1.1].iter().any(|x| !x.is_integer()) {
        return Err(Error::Domain("edge restriction needs integral vertices".into()));
    }
    let da = (&m1.0 - &m0.0).to_integer();
    let db = (&m1.1 - &m0.1).to_integer();
    let len = da.gcd(&db);
    let step = (Rat::new(da, len.clone()), Rat::new(db, len.clone()));
    let mut coeffs = Vec::new();
    let mut k = BigInt::zero();
    while k <= len {
        let kr = Rat::from_integer(k.clone());
        let m = (&m0.0 + &kr * &step.0, &m0.1 + &kr * &step.1);
        let c = match s.points.get(&m) {
            None => Rat::zero(),
            Some(None) => {
                return Err(Error::UnsupportedCoefficient(format!("no coefficient at {}", fmt_point(&m))));
            }
            Some(Some(c)) => {
                c.to_rational().ok_or_else(|| Error::UnsupportedCoefficient(format!("non-real coefficient {c}")))?
            }
        };
        coeffs.push(c);
        k += 1;
    }
    Ok(coeffs)
}

/// Whether every compact edge restriction has only simple roots in `C*`.
pub fn is_newton_nondegenerate(s: &Support) -> Result<bool> {
    let p = polygon_from_support(s)?;
    for (u, v) in p.edges() {
        if !is_squarefree(&restrict(s, &u, &v)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let lead = b.last().expect("non-zero divisor");
    while r.len() >= b.len() {
        let q = r.last().expect("non-empty") / lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Whether the polynomial `Σ p_k v^k` has no repeated root.
pub fn is_squarefree(p: &[Rat]) -> bool {
    let p = trim(p.to_vec());
    let dp: Vec<Rat> = p.iter().enumerate().skip(1).map(|(k, c)| c * Rat::from_integer(k.into())).collect();
    poly_gcd(&p, &dp).len() <= 1
}

pub fn minkowski_sum(p: &NewtonPolygon, q: &NewtonPolygon) -> NewtonPolygon {
    let start = (&p.start().0 + &q.start().0, &p.start().1 + &q.start().1);
    let mut by_slope: BTreeMap<Rat, Point> = BTreeMap::new();
    for (da, db) in p.edge_vectors().into_iter().chain(q.edge_vectors()) {
        let slope = &da / -&db;
        let e = by_slope.entry(slope).or_insert((Rat::zero(), Rat::zero()));
        e.0 += da;
        e.1 += db;
    }
    let mut vertices = vec![start];
    for (da, db) in by_slope.into_values() {
        let last = vertices.last().expect("start vertex");
        let next = (&last.0 + da, &last.1 + db);
        vertices.push(next);
    }
    NewtonPolygon { vertices }
}

/// `⌊a, b⌋`: the Newton polygon of `x^a + y^b`, with `∞` allowed on one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryPolygon {
    pub a: ExtRat,
    pub b: ExtRat,
}

impl ElementaryPolygon {
    pub fn new(a: ExtRat, b: ExtRat) -> Result<Self> {
        let valid = |x: &ExtRat| x.finite().is_none_or(|r| r.is_positive());
        if (a.is_infinite() && b.is_infinite()) || !valid(&a) || !valid(&b) {
            return Err(Error::Domain(format!("invalid elementary polygon ⌊{a},{b}⌋")));
        }
        Ok(ElementaryPolygon { a, b })
    }

    pub fn to_polygon(&self) -> NewtonPolygon {
        let vertices = match (&self.a, &self.b) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => vec![(Rat::zero(), b.clone()), (a.clone(), Rat::zero())],
            (ExtRat::Finite(a), ExtRat::Infinite) => vec![(a.clone(), Rat::zero())],
            (ExtRat::Infinite, ExtRat::Finite(b)) => vec![(Rat::zero(), b.clone())],
            (ExtRat::Infinite, ExtRat::Infinite) => unreachable!("rejected by the constructor"),
        };
        NewtonPolygon { vertices }
    }
}

/// Elementary summands, one per edge in fan order, followed by `⌊a,∞⌋` and
/// `⌊∞,b⌋` for the monomial factor when it is non-trivial.
pub fn elementary_decomposition(p: &NewtonPolygon) -> Vec<ElementaryPolygon> {
    let mut out: Vec<ElementaryPolygon> = p
        .edge_vectors()
        .into_iter()
        .map(|(da, db)| ElementaryPolygon { a: ExtRat::Finite(da), b: ExtRat::Finite(-db) })
        .collect();
    let first = p.start();
    let last = p.vertices.last().expect("polygon has a vertex");
    if first.0.is_positive() {
        out.push(ElementaryPolygon { a: ExtRat::Finite(first.0.clone()), b: ExtRat::Infinite });
    }
    if last.1.is_positive() {
        out.push(ElementaryPolygon { a: ExtRat::Infinite, b: ExtRat::Finite(last.1.clone()) });
    }
    out
}

/// `Σ_l i(C_l)·⌊k(C_l, aux), 1⌋` for a smooth auxiliary branch `aux`.
pub fn polygon_from_branches(branches: &[Branch], aux: &PuiseuxSeries) -> Result<NewtonPolygon> {
    if branches.is_empty() {
        return Err(Error::Domain("no branches".into()));
    }
    if !aux.index().is_one() || aux.order().finite().is_some_and(|o| o < &Rat::one()) {
        return Err(Error::Domain(format!("auxiliary curve y = {aux} is not smooth and transverse to x = 0")));
    }
    let mut acc: Option<NewtonPolygon> = None;
    for b in branches {
        let k = match coincidence_order(&b.series, aux) {
            ExtRat::Finite(k) => k,
            ExtRat::Infinite => {
                return Err(Error::Domain(format!("branch `{}` equals the auxiliary curve", b.label)));
            }
        };
        let i = Rat::from_integer(b.index());
        let part = ElementaryPolygon { a: ExtRat::Finite(&k * &i), b: ExtRat::Finite(i) }.to_polygon();
        acc = Some(match acc {
            None => part,
            Some(a) => minkowski_sum(&a, &part),
        });
    }
    Ok(acc.expect("at least one branch"))
}
