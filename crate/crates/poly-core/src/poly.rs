use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::rational::{parse_rational, rational_to_f64, Rational};
use crate::PolyError;

/// Ordered variable names; position `i` is exponent slot `i`.
pub type Vars = Arc<Vec<String>>;

/// Exponent vector ordered graded-lexicographically, largest first.
///
/// `Ord` is reversed so that iterating a `BTreeMap<Monomial, _>` yields the
/// leading term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over ℚ. No zero coefficient is ever stored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The variable in slot `i`.
    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(PolyError::ArityMismatch { expected: vars.len(), got: e.len() });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// True if every term has total degree `d` (the zero polynomial qualifies).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>, PolyError> {
        self.check(d)?;
        let Some((lm, lc)) = d.terms.iter().next() else {
            return Ok(None);
        };
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((m, c)) = rem.terms.iter().next() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = m.div(lm);
            let qc = c / lc;
            for (dm, dc) in &d.terms {
                rem.add_term(qm.mul(dm), -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Evaluates at `point[i]` for variable `i`, nesting Horner's rule one
    /// variable at a time.
    pub fn eval(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch { expected: self.vars.len(), got: point.len() });
        }
        // Lexicographically descending exponent order groups by leading slots.
        let mut terms: Vec<(&[u32], f64)> =
            self.terms.iter().map(|(m, c)| (m.0.as_slice(), rational_to_f64(c))).collect();
        terms.sort_by(|a, b| b.0.cmp(a.0));
        Ok(horner(&terms, 0, point))
    }

    /// Evaluates with values looked up by variable name.
    pub fn eval_named(&self, point: &HashMap<String, f64>) -> Result<f64, PolyError> {
        let vals = self
            .vars
            .iter()
            .map(|v| point.get(v).copied().ok_or_else(|| PolyError::MissingVariable(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.eval(&vals)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch { expected: self.vars.len(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.0) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `Y_i -> Y_{perm[i]}` into a polynomial over `vars`.
    pub fn relabel(&self, vars: &Vars, perm: &[usize]) -> Result<Self, PolyError> {
        if perm.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch { expected: self.vars.len(), got: perm.len() });
        }
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[perm[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Parses the canonical text form over the given registry. Variables
    /// are written `Y_<name>`; `^k` powers and `p/q` coefficients accepted.
    pub fn parse(vars: &Vars, s: &str) -> Result<Self, PolyError> {
        let bad = |msg: &str| PolyError::BadPolynomial(format!("{msg} in `{s}`"));
        let index: HashMap<&str, usize> =
            vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src == "0" {
            return Ok(Self::zero(vars));
        }
        let mut p = Self::zero(vars);
        let mut chunks = Vec::new();
        let mut start = 0;
        for (i, ch) in src.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                chunks.push(&src[start..i]);
                start = i;
            }
        }
        chunks.push(&src[start..]);
        for chunk in chunks {
            let (neg, body) = match chunk.as_bytes().first() {
                Some(b'-') => (true, &chunk[1..]),
                Some(b'+') => (false, &chunk[1..]),
                _ => (false, chunk),
            };
            if body.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; vars.len()];
            for factor in body.split('*') {
                if let Some(name) = factor.strip_prefix("Y_") {
                    let (name, pow) = match name.rsplit_once('^') {
                        Some((n, k)) => (n, k.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (name, 1),
                    };
                    let &i = index.get(name).ok_or_else(|| bad("unknown variable"))?;
                    exps[i] += pow;
                } else {
                    coeff *= parse_rational(factor).map_err(|_| bad("bad coefficient"))?;
                }
            }
            p.add_term(Monomial(exps), if neg { -coeff } else { coeff });
        }
        Ok(p)
    }
}

fn horner(terms: &[(&[u32], f64)], k: usize, x: &[f64]) -> f64 {
    if terms.is_empty() {
        return 0.0;
    }
    if k == x.len() {
        return terms.iter().map(|t| t.1).sum();
    }
    let mut acc = 0.0;
    let mut prev: Option<u32> = None;
    let mut i = 0;
    while i < terms.len() {
        let e = terms[i].0[k];
        let mut j = i;
        while j < terms.len() && terms[j].0[k] == e {
            j += 1;
        }
        if let Some(p) = prev {
            acc *= x[k].powi((p - e) as i32);
        }
        acc += horner(&terms[i..j], k + 1, x);
        prev = Some(e);
        i = j;
    }
    acc * x[k].powi(prev.unwrap_or(0) as i32)
}

impl fmt::Display for MultiPoly {
    /// Canonical form: graded-lex descending, `Y_<id>` variables,
    /// `p/q` coefficients, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(a.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("Y_{}", self.vars[i])),
                    _ => factors.push(format!("Y_{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
