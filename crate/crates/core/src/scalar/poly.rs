//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials are sorted exponent lists over [`ParamName`] variables; terms are
//! kept in descending lexicographic order (earlier variables in the global
//! parameter order are more significant) with no zero coefficients, so equal
//! polynomials are structurally equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::param::ParamName;

/// A power product `v1^e1 · v2^e2 · …` with variables sorted and exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(ParamName, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: ParamName) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(ParamName, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_of(&self, v: ParamName) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Componentwise gcd of exponent vectors.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = other.degree_of(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Exact quotient, when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None; // divisor has a variable self lacks
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    fn without(&self, v: ParamName) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    fn with_degree(&self, v: ParamName, e: u32) -> Monomial {
        if e == 0 {
            return self.clone();
        }
        let mut out = self.0.clone();
        let pos = out.partition_point(|&(w, _)| w < v);
        out.insert(pos, (v, e));
        Monomial(out)
    }
}

/// Pure lexicographic monomial order: the earlier variable with differing
/// exponent decides, higher exponent first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Less => return Ordering::Less,
                            Ordering::Greater => return Ordering::Greater,
                            Ordering::Equal => {}
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: terms sorted by monomial, descending, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: vec![(Monomial::one(), c)],
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn var(v: ParamName) -> Self {
        Poly {
            terms: vec![(Monomial::var(v), BigRational::one())],
        }
    }

    pub fn from_terms(terms: Vec<(Monomial, BigRational)>) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            let e = map.entry(m).or_insert_with(BigRational::zero);
            *e += c;
        }
        Poly {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        self.is_constant().then(|| self.terms[0].1.clone())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term in the global monomial order.
    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn variables(&self) -> Vec<ParamName> {
        let mut vs: Vec<ParamName> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn degree_of(&self, v: ParamName) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_of(v))
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let e = map.entry(m).or_insert_with(BigRational::zero);
                *e += ca * cb;
            }
        }
        Poly {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluation under a total assignment of the variables.
    pub fn eval(&self, value_of: &mut impl FnMut(ParamName) -> BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                let val = value_of(v);
                for _ in 0..e {
                    t *= &val;
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = other.as_constant() {
            return Some(self.scale(&(BigRational::one() / c)));
        }
        let (lm, lc) = other.leading().unwrap();
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, BigRational)> = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.div(lm)?;
            let qc = rc / lc;
            quo.push((qm.clone(), qc.clone()));
            rem = rem.sub(&other.mul_monomial(&qm, &qc));
        }
        Some(Poly::from_terms(quo))
    }

    /// The monomial dividing every term.
    fn common_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut acc = first.clone();
        for (m, _) in it {
            if acc.is_one() {
                break;
            }
            acc = acc.gcd(m);
        }
        acc
    }

    /// Rational content: gcd of coefficient numerators over lcm of denominators,
    /// signed like the leading coefficient.
    fn rational_content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::zero();
        }
        let mut content = BigRational::new(num, den);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        content
    }

    /// Splits off rational content and common monomial, leaving a primitive
    /// part with positive leading coefficient.
    fn primitive_parts(&self) -> (BigRational, Monomial, Poly) {
        if self.is_zero() {
            return (BigRational::zero(), Monomial::one(), Poly::zero());
        }
        let content = self.rational_content();
        let mono = self.common_monomial();
        let inv = BigRational::one() / &content;
        let prim = Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.div(&mono).unwrap(), c * &inv))
                .collect(),
        };
        (content, mono, prim)
    }

    /// Polynomial gcd, normalized primitive with positive leading coefficient.
    /// Monomial contents are handled directly; the general case runs a
    /// primitive pseudo-remainder sequence in the most significant variable.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            let (_, m, p) = other.primitive_parts();
            return p.mul_monomial(&m, &BigRational::one());
        }
        if other.is_zero() {
            let (_, m, p) = self.primitive_parts();
            return p.mul_monomial(&m, &BigRational::one());
        }
        let (_, ma, pa) = self.primitive_parts();
        let (_, mb, pb) = other.primitive_parts();
        let mono = ma.gcd(&mb);
        let core = if pa.is_one() || pb.is_one() {
            Poly::one()
        } else {
            gcd_primitive(&pa, &pb)
        };
        core.mul_monomial(&mono, &BigRational::one())
    }
}

/// Gcd of two primitive, monomial-free-content polynomials.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a == b {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // Main variable: the most significant one appearing in either operand.
    let va = a.variables();
    let vb = b.variables();
    let x = *va.first().min(vb.first()).unwrap();
    if !vb.contains(&x) || !va.contains(&x) {
        // x occurs in only one operand: gcd divides that operand's coefficients.
        let (with_x, without_x) = if va.contains(&x) { (a, b) } else { (b, a) };
        let coeffs = univariate_in(with_x, x);
        let mut g = without_x.clone();
        for c in coeffs.values() {
            g = g.gcd(c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        return g;
    }

    let ua = univariate_in(a, x);
    let ub = univariate_in(b, x);
    let cont_a = poly_content(&ua);
    let cont_b = poly_content(&ub);
    let cont = cont_a.gcd(&cont_b);
    let prim_a = divide_coeffs(&ua, &cont_a);
    let prim_b = divide_coeffs(&ub, &cont_b);

    let mut f = if degree(&prim_a) >= degree(&prim_b) {
        prim_a.clone()
    } else {
        prim_b.clone()
    };
    let mut g = if degree(&prim_a) >= degree(&prim_b) {
        prim_b
    } else {
        prim_a
    };
    loop {
        let r = pseudo_rem(&f, &g, x);
        if r.is_empty() {
            let gp = collect(&g, x);
            let (_, m, p) = gp.primitive_parts();
            return collect_mul(&p.mul_monomial(&m, &BigRational::one()), &cont);
        }
        if degree(&r) == 0 {
            return collect_mul(&Poly::one(), &cont);
        }
        let rc = poly_content(&r);
        f = g;
        g = divide_coeffs(&r, &rc);
    }
}

type Univariate = BTreeMap<u32, Poly>;

fn univariate_in(p: &Poly, x: ParamName) -> Univariate {
    let mut out: Univariate = BTreeMap::new();
    for (m, c) in p.terms() {
        let d = m.degree_of(x);
        let rest = Poly {
            terms: vec![(m.without(x), c.clone())],
        };
        let e = out.entry(d).or_insert_with(Poly::zero);
        *e = e.add(&rest);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn degree(u: &Univariate) -> u32 {
    u.keys().next_back().copied().unwrap_or(0)
}

fn poly_content(u: &Univariate) -> Poly {
    let mut g = Poly::zero();
    for c in u.values() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        Poly::one()
    } else {
        g
    }
}

fn divide_coeffs(u: &Univariate, d: &Poly) -> Univariate {
    u.iter()
        .map(|(&k, v)| (k, v.div_exact(d).expect("content divides coefficients")))
        .collect()
}

/// Pseudo-remainder of `f` by `g` in the variable `x`.
fn pseudo_rem(f: &Univariate, g: &Univariate, _x: ParamName) -> Univariate {
    let dg = degree(g);
    let lg = g.get(&dg).cloned().unwrap_or_else(Poly::one);
    let mut r = f.clone();
    while !r.is_empty() && degree(&r) >= dg {
        let dr = degree(&r);
        let lr = r.get(&dr).unwrap().clone();
        // r := lg·r − lr·x^{dr−dg}·g
        let mut next: Univariate = BTreeMap::new();
        for (&k, v) in &r {
            next.insert(k, v.mul(&lg));
        }
        for (&k, v) in g {
            let kk = k + dr - dg;
            let sub = v.mul(&lr);
            let e = next.entry(kk).or_insert_with(Poly::zero);
            *e = e.sub(&sub);
        }
        next.retain(|_, v| !v.is_zero());
        r = next;
    }
    r
}

fn collect(u: &Univariate, x: ParamName) -> Poly {
    let mut acc = Poly::zero();
    for (&k, v) in u {
        let shifted = Poly {
            terms: v
                .terms()
                .iter()
                .map(|(m, c)| (m.with_degree(x, k), c.clone()))
                .collect(),
        };
        acc = acc.add(&Poly::from_terms(shifted.terms));
    }
    acc
}

fn collect_mul(core: &Poly, cont: &Poly) -> Poly {
    let g = core.mul(cont);
    let (_, m, p) = g.primitive_parts();
    p.mul_monomial(&m, &BigRational::one())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                let mut lead = true;
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                    lead = false;
                }
                for &(v, e) in m.factors() {
                    if !lead {
                        write!(f, "*")?;
                    }
                    lead = false;
                    if e == 1 {
                        write!(f, "{v}")?;
                    } else {
                        write!(f, "{v}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
