//! Sparse commutative polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::series::Series;

/// A polynomial in named commuting variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl CommPoly {
    pub fn zero(vars: &[&str]) -> CommPoly {
        CommPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rational) -> CommPoly {
        let mut p = CommPoly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], i: usize) -> CommPoly {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        CommPoly::monomial(vars, e, Rational::ONE)
    }

    pub fn monomial(vars: &[&str], e: Vec<u32>, c: Rational) -> CommPoly {
        let mut p = CommPoly::zero(vars);
        p.add_term(e, c);
        p
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    fn empty_like(&self) -> CommPoly {
        CommPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        assert_eq!(e.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert(Rational::ZERO);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_vars(&self, other: &CommPoly) {
        assert_eq!(self.vars, other.vars, "variable sets differ");
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, r: &Rational) -> CommPoly {
        let mut out = self.empty_like();
        if r.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        self.check_vars(other);
        let mut out = self.empty_like();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> CommPoly {
        let mut acc = CommPoly::constant(&self.vars(), Rational::ONE);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lexicographically largest exponent.
    fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Multivariate division by `d` under lex order: `self = q d + r`.
    pub fn div_rem(&self, d: &CommPoly) -> (CommPoly, CommPoly) {
        self.check_vars(d);
        let (le, lc) = d.leading().expect("division by zero polynomial");
        let (le, lc) = (le.clone(), lc.clone());
        let mut q = self.empty_like();
        let mut r = self.empty_like();
        let mut p = self.clone();
        while let Some((pe, pc)) = p.leading() {
            let (pe, pc) = (pe.clone(), pc.clone());
            if pe.iter().zip(&le).all(|(a, b)| a >= b) {
                let te: Vec<u32> = pe.iter().zip(&le).map(|(a, b)| a - b).collect();
                let t = CommPoly { vars: self.vars.clone(), terms: BTreeMap::from([(te, &pc / &lc)]) };
                q = q.add(&t);
                p = p.sub(&t.mul(d));
            } else {
                r.add_term(pe.clone(), pc);
                p.terms.remove(&pe);
            }
        }
        (q, r)
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &CommPoly) -> Option<CommPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// The common weighted degree, or `None` if terms disagree. Zero is homogeneous of weight 0.
    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut deg = None;
        for e in self.terms.keys() {
            let w: i64 = e.iter().zip(weights).map(|(a, b)| *a as i64 * b).sum();
            match deg {
                None => deg = Some(w),
                Some(d) if d != w => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    pub fn partial(&self, var: usize) -> CommPoly {
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut f = e.clone();
                f[var] -= 1;
                out.add_term(f, c * &Rational::from_int(e[var] as i64));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::ZERO;
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, ei) in x.iter().zip(e) {
                t *= xi.pow(*ei as i32);
            }
            acc += t;
        }
        acc
    }

    /// Evaluate on power series, e.g. a polynomial in `(u, v)` at `(u(q), v(q))`.
    pub fn eval_series(&self, x: &[Series]) -> Series {
        let order = x.iter().map(|s| s.order()).min().unwrap_or(0);
        let mut acc = Series::zero(0, order);
        for (e, c) in &self.terms {
            let mut t = Series::one(order).scale(c);
            for (xi, ei) in x.iter().zip(e) {
                if *ei > 0 {
                    t = t.mul(&xi.pow(*ei));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replace variable `var` by the polynomial `p` (same variable set).
    pub fn substitute(&self, var: usize, p: &CommPoly) -> CommPoly {
        self.check_vars(p);
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[var] = 0;
            let t = CommPoly { vars: self.vars.clone(), terms: BTreeMap::from([(rest, c.clone())]) };
            out = out.add(&t.mul(&p.pow(e[var])));
        }
        out
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(p, _)| **p > 0)
                .map(|(p, v)| if *p == 1 { v.clone() } else { format!("{v}^{p}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join(" "))?;
            } else {
                write!(f, "{a} {}", mono.join(" "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly[{}]({self})", self.vars.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsePolyError {
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("malformed term `{0}`")]
    Malformed(String),
}

impl CommPoly {
    /// Parse the [`Display`](fmt::Display) format, e.g. `756/65 u^3 + 16200/91 v^2`.
    pub fn parse(s: &str, vars: &[&str]) -> Result<CommPoly, ParsePolyError> {
        let mut out = CommPoly::zero(vars);
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for tok in s.split_whitespace() {
            if tok == "+" || tok == "-" {
                if !cur.trim().is_empty() {
                    terms.push((neg, cur.trim().to_string()));
                }
                cur.clear();
                neg = tok == "-";
            } else {
                cur.push(' ');
                cur.push_str(tok);
            }
        }
        if !cur.trim().is_empty() {
            terms.push((neg, cur.trim().to_string()));
        }
        for (neg, t) in terms {
            let mut coeff = Rational::ONE;
            let mut e = vec![0u32; vars.len()];
            let mut sign_neg = neg;
            for (k, factor) in t.split(|c: char| c == ' ' || c == '*').filter(|x| !x.is_empty()).enumerate() {
                let mut fac = factor;
                if k == 0 && fac.starts_with('-') {
                    sign_neg = !sign_neg;
                    fac = &fac[1..];
                    if fac.is_empty() {
                        continue;
                    }
                }
                if fac.starts_with(|c: char| c.is_ascii_digit()) {
                    let r: Rational = fac.parse().map_err(|_| ParsePolyError::Malformed(t.clone()))?;
                    coeff *= r;
                } else {
                    let (name, pow) = match fac.split_once('^') {
                        Some((n, p)) => (n, p.parse::<u32>().map_err(|_| ParsePolyError::Malformed(t.clone()))?),
                        None => (fac, 1),
                    };
                    let i = vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| ParsePolyError::UnknownVar(name.to_string()))?;
                    e[i] += pow;
                }
            }
            if sign_neg {
                coeff = -coeff;
            }
            out.add_term(e, coeff);
        }
        Ok(out)
    }
}

impl FromStr for CommPoly {
    type Err = ParsePolyError;

    /// Parses a polynomial in `u, v`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CommPoly::parse(s, &["u", "v"])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const UV: [&str; 2] = ["u", "v"];

    #[test]
    fn display_and_parse() {
        let p = CommPoly::parse("756/65 u^3 + 16200/91 v^2", &UV).unwrap();
        assert_eq!(p.to_string(), "756/65 u^3 + 16200/91 v^2");
        let q = CommPoly::parse("-u v^2 - 3 + 1/2 u", &UV).unwrap();
        assert_eq!(q.to_string(), "-u v^2 + 1/2 u - 3");
        assert_eq!(CommPoly::parse(&q.to_string(), &UV).unwrap(), q);
        assert!(CommPoly::parse("w^2", &UV).is_err());
    }

    #[test]
    fn exact_division() {
        let x = CommPoly::var(&["x", "y"], 0);
        let y = CommPoly::var(&["x", "y"], 1);
        let num = y.pow(4).sub(&x.pow(4));
        let q = num.div_exact(&x.add(&y)).unwrap();
        assert_eq!(q.mul(&x.add(&y)), num);
        assert!(x.pow(2).add(&y).div_exact(&x.add(&y)).is_none());
    }

    #[test]
    fn weighted_homogeneity() {
        let d = CommPoly::parse("u^3 - 27 v^2", &UV).unwrap();
        assert_eq!(d.weighted_degree(&[4, 6]), Some(12));
        assert_eq!(CommPoly::parse("u + v", &UV).unwrap().weighted_degree(&[4, 6]), None);
    }

    #[test]
    fn substitution() {
        let vars = ["x", "y"];
        let x = CommPoly::var(&vars, 0);
        let y = CommPoly::var(&vars, 1);
        let p = x.pow(2);
        assert_eq!(p.substitute(0, &x.add(&y)), x.pow(2).add(&x.mul(&y).scale(&Rational::from_int(2))).add(&y.pow(2)));
    }
}
