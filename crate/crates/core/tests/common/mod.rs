//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use lotus_core::lattice::{LatticeVector, Rat};
use lotus_core::puiseux::PuiseuxSeries;
use lotus_core::{Branch, ExtRat, PhasedRational};

/// Stern-Brocot path from `1` down to `λ` by repeated mediants.
pub fn stern_brocot_path(lambda: &Rat) -> Vec<Rat> {
    let (mut lo, mut hi) = ((BigInt::zero(), BigInt::one()), (BigInt::one(), BigInt::zero()));
    let mut out = Vec::new();
    loop {
        let m = (&lo.0 + &hi.0, &lo.1 + &hi.1);
        let v = Rat::new(m.0.clone(), m.1.clone());
        out.push(v.clone());
        if &v == lambda {
            return out;
        }
        if lambda < &v {
            hi = m;
        } else {
            lo = m;
        }
    }
}

/// Deepest common node of two Stern-Brocot paths.
pub fn stern_brocot_meet(a: &Rat, b: &Rat) -> Rat {
    let pa = stern_brocot_path(a);
    let pb = stern_brocot_path(b);
    pa.iter().zip(&pb).take_while(|(x, y)| x == y).last().map(|(x, _)| x.clone()).expect("both start at 1")
}

fn cross(o: &(BigInt, BigInt), p: &(BigInt, BigInt), q: &(BigInt, BigInt)) -> BigInt {
    (&p.0 - &o.0) * (&q.1 - &o.1) - (&p.1 - &o.1) * (&q.0 - &o.0)
}

/// Interior rays of the regularization, from the compact boundary of the
/// convex hull of the non-zero lattice points of each cone.
pub fn regularize_by_hull(slopes: &[Rat]) -> Vec<Rat> {
    let mut rays: Vec<LatticeVector> = vec![LatticeVector::e1()];
    let mut s: Vec<Rat> = slopes.to_vec();
    s.sort();
    s.dedup();
    rays.extend(s.iter().map(|r| LatticeVector::new(r.denom().clone(), r.numer().clone())));
    rays.push(LatticeVector::e2());
    let mut out = BTreeSet::new();
    for w in rays.windows(2) {
        let (u, v) = (&w[0], &w[1]);
        // lattice points of the parallelogram spanned by u and v
        let cmax = &u.c + &v.c;
        let dmax = &u.d + &v.d;
        let det = u.det(v);
        let mut pts: Vec<(BigInt, BigInt)> = Vec::new();
        let mut c = BigInt::zero();
        while c <= cmax {
            let mut d = BigInt::zero();
            while d <= dmax {
                let p = LatticeVector::new(c.clone(), d.clone());
                // p = s·u + t·v with 0 <= s, t <= 1
                let s_num = p.det(v);
                let t_num = u.det(&p);
                let inside = !s_num.is_negative() && !t_num.is_negative() && s_num <= det && t_num <= det;
                if inside && !(c.is_zero() && d.is_zero()) {
                    pts.push((c.clone(), d.clone()));
                }
                d += 1;
            }
            c += 1;
        }
        // sort by angle from u towards v
        pts.sort_by(|a, b| {
            let pa = LatticeVector::new(a.0.clone(), a.1.clone());
            let pb = LatticeVector::new(b.0.clone(), b.1.clone());
            pb.det(&pa).cmp(&BigInt::zero()).then((&a.0 + &a.1).cmp(&(&b.0 + &b.1)))
        });
        // one point per direction: the closest to the origin
        let mut dedup: Vec<(BigInt, BigInt)> = Vec::new();
        for p in pts {
            let same_dir = dedup.last().is_some_and(|q| &q.0 * &p.1 == &q.1 * &p.0);
            if !same_dir {
                dedup.push(p);
            }
        }
        let mut hull: Vec<(BigInt, BigInt)> = Vec::new();
        for p in dedup {
            while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) >= BigInt::zero() {
                hull.pop();
            }
            hull.push(p);
        }
        // every lattice point on the chain gives a ray
        for e in hull.windows(2) {
            let (a, b) = (&e[0], &e[1]);
            let (dc, dd) = (&b.0 - &a.0, &b.1 - &a.1);
            let g = dc.gcd(&dd);
            let mut k = BigInt::zero();
            while k <= g {
                let pc = &a.0 + &dc / &g * &k;
                let pd = &a.1 + &dd / &g * &k;
                if pc.is_positive() && pd.is_positive() {
                    out.insert(Rat::new(pd, pc));
                }
                k += 1;
            }
        }
    }
    out.into_iter().collect()
}

/// `ν(a - b)` by direct comparison of terms.
pub fn order_of_difference(a: &PuiseuxSeries, b: &PuiseuxSeries) -> ExtRat {
    let exps: BTreeSet<Rat> = a.terms().chain(b.terms()).map(|(e, _)| e.clone()).collect();
    for e in exps {
        if a.coefficient(&e) != b.coefficient(&e) {
            return ExtRat::Finite(e);
        }
    }
    ExtRat::Infinite
}

/// Coincidence order as the maximum over all conjugates of `b`.
pub fn coincidence_by_conjugates(a: &PuiseuxSeries, b: &PuiseuxSeries) -> ExtRat {
    let n = b.index();
    let mut best = ExtRat::Finite(Rat::zero());
    let mut j = BigInt::zero();
    while j < n {
        best = best.max(order_of_difference(a, &b.conjugate(&j)));
        j += 1;
    }
    best
}

/// `A·B = n_A · Σ_j ν(η_A - conj_j η_B)`.
pub fn intersection_by_conjugates(a: &PuiseuxSeries, b: &PuiseuxSeries) -> BigInt {
    let mut sum = Rat::zero();
    let n = b.index();
    let mut j = BigInt::zero();
    while j < n {
        match order_of_difference(a, &b.conjugate(&j)) {
            ExtRat::Finite(v) => sum += v,
            ExtRat::Infinite => panic!("identical branches"),
        }
        j += 1;
    }
    let v = sum * Rat::from_integer(a.index());
    assert!(v.is_integer());
    v.to_integer()
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

fn coefficient<R: Rng>(rng: &mut R) -> PhasedRational {
    let choices = [1, -1, 2, -2, 3];
    PhasedRational::from_rational(Rat::from_integer(choices[rng.gen_range(0..choices.len())].into()))
}

/// Random series whose index divides `index_bound`-sized products of small
/// denominators; at most `max_terms` terms, exponents at most 6.
pub fn random_series<R: Rng>(rng: &mut R, max_index: i64, max_terms: usize) -> PuiseuxSeries {
    let n = rng.gen_range(1..=max_index);
    let nterms = rng.gen_range(1..=max_terms);
    let mut exps = BTreeSet::new();
    while exps.len() < nterms {
        exps.insert(rat(rng.gen_range(1..=6 * n), n));
    }
    PuiseuxSeries::from_terms(exps.into_iter().map(|e| (e, coefficient(rng)))).unwrap()
}

/// Series `a x^(m/n) + ...` built to have exactly `k` characteristic exponents.
pub fn random_characteristic_series<R: Rng>(rng: &mut R, k: usize) -> PuiseuxSeries {
    let mut terms = Vec::new();
    let mut denom = BigInt::one();
    let mut last = Rat::zero();
    let primes = [2i64, 3, 5];
    // optional smooth prefix
    if rng.gen_bool(0.3) {
        let e = Rat::from_integer(rng.gen_range(1..=2).into());
        last = e.clone();
        terms.push((e, coefficient(rng)));
    }
    for _ in 0..k {
        let p = BigInt::from(primes[rng.gen_range(0..primes.len())]);
        let nd = &denom * &p;
        // smallest numerator above `last` with exact denominator nd
        let mut m: BigInt = (&last * Rat::from_integer(nd.clone())).floor().to_integer() + 1;
        m += BigInt::from(rng.gen_range(0..3));
        while !m.gcd(&p).is_one() || Rat::new(m.clone(), nd.clone()).denom() != &nd {
            m += 1;
        }
        let e = Rat::new(m, nd.clone());
        last = e.clone();
        denom = nd;
        terms.push((e, coefficient(rng)));
        if rng.gen_bool(0.3) {
            // a non-characteristic term in between
            let m2 = (&last * Rat::from_integer(denom.clone())).to_integer() + 1;
            let e2 = Rat::new(m2, denom.clone());
            last = e2.clone();
            terms.push((e2, coefficient(rng)));
        }
    }
    if terms.is_empty() {
        terms.push((Rat::from_integer(rng.gen_range(1..=3).into()), coefficient(rng)));
    }
    PuiseuxSeries::from_terms(terms).unwrap()
}

pub fn branch(label: &str, s: PuiseuxSeries) -> Branch {
    Branch::new(label, s).unwrap()
}

/// Random family of distinct branches.
pub fn random_curve<R: Rng>(rng: &mut R, max_branches: usize, max_index: i64) -> Vec<Branch> {
    let n = rng.gen_range(1..=max_branches);
    let mut out: Vec<Branch> = Vec::new();
    // share prefixes to get interesting trees
    while out.len() < n {
        let s = if !out.is_empty() && rng.gen_bool(0.5) {
            let base = &out[rng.gen_range(0..out.len())].series;
            let cut = base.terms().nth(rng.gen_range(0..base.len())).unwrap().0.clone();
            let prefix = base.truncate(&cut);
            let tail = random_series(rng, max_index, 2);
            let shift = cut.clone();
            let terms: Vec<(Rat, PhasedRational)> = prefix
                .terms()
                .map(|(e, a)| (e.clone(), a.clone()))
                .chain(tail.terms().map(|(e, a)| (e + &shift, a.clone())))
                .collect();
            PuiseuxSeries::from_terms(terms).unwrap()
        } else {
            random_series(rng, max_index, 3)
        };
        let duplicate = out.iter().any(|b| lotus_core::puiseux::coincidence_order(&b.series, &s).is_infinite());
        if !duplicate {
            out.push(branch(&format!("C{}", out.len() + 1), s));
        }
    }
    out
}

/// Slopes of the interior vertices on the lateral boundary of a membrane.
pub fn lateral_slopes(l: &lotus_core::lotus::Lotus, membrane: usize) -> Vec<Rat> {
    let m = &l.membranes[membrane];
    m.lateral[1..m.lateral.len() - 1]
        .iter()
        .map(|v| {
            let p = &m.coords[v];
            Rat::new(p.d.clone(), p.c.clone())
        })
        .collect()
}

fn ordered(a: String, b: String) -> (String, String) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Edges of the dual graph after contracting every chain of regularizing
/// vertices `R*` into a single edge.
pub fn contracted_dual_edges(l: &lotus_core::lotus::Lotus) -> BTreeSet<(String, String)> {
    let g = lotus_core::lotus::dual_graph(l);
    let is_r = |v: usize| l.label(v).starts_with('R');
    let mut out = BTreeSet::new();
    for v in g.vertices.iter().filter(|v| !is_r(v.id)) {
        for n in g.neighbours(v.id) {
            let (mut prev, mut cur) = (v.id, n);
            while is_r(cur) {
                let next = g.neighbours(cur).into_iter().find(|&x| x != prev).expect("chain of R vertices");
                prev = cur;
                cur = next;
            }
            out.insert(ordered(v.label.clone(), l.label(cur).to_string()));
        }
    }
    out
}

pub fn fan_tree_edges(ft: &lotus_core::engine::FanTree) -> BTreeSet<(String, String)> {
    ft.edges().into_iter().map(|(a, b)| ordered(ft.nodes[a].label.clone(), ft.nodes[b].label.clone())).collect()
}

/// Trunk slopes along a branch path with every run of integer slopes folded
/// into the next fractional one; a trailing integer run is dropped.
pub fn merged_slopes(slopes: &[Rat]) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut acc = Rat::zero();
    for s in slopes {
        acc += s;
        if !s.is_integer() {
            out.push(std::mem::replace(&mut acc, Rat::zero()));
        }
    }
    out
}

/// `d/c` for each Newton pair of a series.
pub fn newton_pair_slopes(s: &PuiseuxSeries) -> Vec<Rat> {
    lotus_core::puiseux::newton_pairs(s).into_iter().map(|(c, d)| Rat::new(d, c)).collect()
}

/// Random positive rational with denominator at most `max_den`.
pub fn random_slope<R: Rng>(rng: &mut R, max_den: i64, max_value: i64) -> Rat {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(1..=max_value * q);
    rat(p, q)
}

/// Branch with prescribed first term `alpha x^(d/c)` and a random tail.
pub fn random_with_head<R: Rng>(rng: &mut R, head: &Rat, alpha: &PhasedRational, tail_terms: usize) -> PuiseuxSeries {
    let c = head.denom().clone();
    let m = BigInt::from(rng.gen_range(1..=3));
    let step = Rat::new(BigInt::one(), &c * &m);
    let mut terms = vec![(head.clone(), alpha.clone())];
    let mut e = head.clone();
    for _ in 0..rng.gen_range(1..=tail_terms) {
        e += &step * Rat::from_integer(rng.gen_range(1..=4).into());
        terms.push((e.clone(), coefficient(rng)));
    }
    PuiseuxSeries::from_terms(terms).unwrap()
}
