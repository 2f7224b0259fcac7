//! Polynomials in `x1..xm` over ℚ and polynomial vector fields.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};
use crate::exactlin::{format_rational, parse_rational, Rational};

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    base_dim: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(base_dim: usize) -> Self {
        Self { base_dim, terms: BTreeMap::new() }
    }

    pub fn constant(base_dim: usize, c: Rational) -> Self {
        Self::monomial(base_dim, vec![0; base_dim], c)
    }

    pub fn one(base_dim: usize) -> Self {
        Self::constant(base_dim, Rational::one())
    }

    /// `x_{i+1}` (0-based index).
    pub fn var(base_dim: usize, i: usize) -> Self {
        let mut e = vec![0; base_dim];
        e[i] = 1;
        Self::monomial(base_dim, e, Rational::one())
    }

    pub fn monomial(base_dim: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), base_dim);
        let mut p = Self::zero(base_dim);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(base_dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(base_dim);
        for (e, c) in terms {
            if e.len() != base_dim {
                return input(format!("monomial has {} exponents, expected {base_dim}", e.len()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.terms.values().next().cloned().unwrap_or_default()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.base_dim, other.base_dim);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.base_dim);
        }
        Self { base_dim: self.base_dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.base_dim, other.base_dim);
        let mut p = Self::zero(self.base_dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    /// `∂/∂x_{i+1}`
    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.base_dim);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, c * Rational::from_integer(e[i].into()));
            }
        }
        p
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Parses `3/2*x1^2*x2 - x2`; `*` between factors is optional.
    pub fn parse(base_dim: usize, s: &str) -> Result<Self> {
        Parser { s: s.as_bytes(), pos: 0, base_dim }.poly()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    base_dim: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        input(format!("polynomial {:?}: {msg} at offset {}", String::from_utf8_lossy(self.s), self.pos))
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii")
    }

    fn poly(mut self) -> Result<Poly> {
        let mut p = Poly::zero(self.base_dim);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                Some(_) if first => Rational::one(),
                Some(_) => return self.err("expected '+' or '-'"),
            };
            first = false;
            let (e, c) = self.term()?;
            p.add_term(e, c * sign);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Vec<u32>, Rational)> {
        let mut coef = Rational::one();
        let mut exps = vec![0u32; self.base_dim];
        let mut any = false;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            let num = self.digits().to_owned();
            let mut lit = num;
            if self.s.get(self.pos) == Some(&b'/') {
                self.pos += 1;
                let den = self.digits();
                if den.is_empty() {
                    return self.err("missing denominator");
                }
                lit = format!("{lit}/{den}");
            }
            coef = match parse_rational(&lit) {
                Some(c) => c,
                None => return self.err("bad coefficient"),
            };
            any = true;
        }
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        return self.err("expected variable after '*'");
                    }
                }
                Some(b'x') => {}
                _ => break,
            }
            self.pos += 1;
            let idx = self.digits();
            let i: usize = match idx.parse() {
                Ok(i) if i >= 1 && i <= self.base_dim => i,
                _ => return self.err(&format!("variable must be x1..x{}", self.base_dim)),
            };
            let mut k = 1u32;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                k = match self.digits().parse() {
                    Ok(k) => k,
                    Err(_) => return self.err("bad exponent"),
                };
            }
            exps[i - 1] += k;
            any = true;
        }
        if !any {
            return self.err("expected a term");
        }
        Ok((exps, coef))
    }
}

fn fmt_monomial(e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{k}", i + 1)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Highest total degree first, ties in reverse lexicographic exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let mono = fmt_monomial(e);
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", format_rational(&mag))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

/// `Σ X_i ∂/∂x_i`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyVecField {
    components: Vec<Poly>,
}

impl PolyVecField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let m = components.len();
        if components.iter().any(|p| p.base_dim != m) {
            return input("vector field components must live in the same number of variables as there are components");
        }
        Ok(Self { components })
    }

    pub fn zero(base_dim: usize) -> Self {
        Self { components: vec![Poly::zero(base_dim); base_dim] }
    }

    /// `∂/∂x_{i+1}`
    pub fn partial(base_dim: usize, i: usize) -> Self {
        let mut v = Self::zero(base_dim);
        v.components[i] = Poly::one(base_dim);
        v
    }

    pub fn parse(base_dim: usize, comps: &[&str]) -> Result<Self> {
        if comps.len() != base_dim {
            return input(format!("vector field needs {base_dim} components"));
        }
        Self::new(comps.iter().map(|s| Poly::parse(base_dim, s)).collect::<Result<_>>()?)
    }

    pub fn base_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// `X(f)`
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(self.base_dim());
        for (i, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&f.derivative(i)));
            }
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { components: self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { components: self.components.iter().map(|a| a.scale(s)).collect() }
    }

    /// `f·X`
    pub fn mul_poly(&self, f: &Poly) -> Self {
        Self { components: self.components.iter().map(|a| a.mul(f)).collect() }
    }
}

impl fmt::Display for PolyVecField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*d/dx{}", i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `[X,Y]_i = X(Y_i) − Y(X_i)`
pub fn poly_vf_bracket(x: &PolyVecField, y: &PolyVecField) -> Result<PolyVecField> {
    if x.base_dim() != y.base_dim() {
        return input("vector fields on different spaces");
    }
    Ok(PolyVecField {
        components: x.components.iter().zip(&y.components).map(|(xi, yi)| x.apply(yi).sub(&y.apply(xi))).collect(),
    })
}
