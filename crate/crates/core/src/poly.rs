//! Exact sparse multivariate polynomials and the coefficient certificates
//! behind every Nullstellensatz step of the pipeline.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Num, One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient rings: exact numbers with negation.
pub trait Ring: Clone + Debug + Num + Neg<Output = Self> {}

impl<T: Clone + Debug + Num + Neg<Output = T>> Ring for T {}

/// A polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<C> {
    arity: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: C) -> Self {
        Self::monomial(vec![0; arity], c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, C::one())
    }

    /// The variable `x_index` (zero based).
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable {index} out of range for arity {arity}");
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Self::monomial(exps, C::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: C) -> Self {
        let arity = exponents.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Polynomial { arity, terms }
    }

    /// `constant + sum of coefficient * x_var`.
    pub fn linear(arity: usize, coefficients: &[(usize, C)], constant: C) -> Self {
        let mut p = Self::constant(arity, constant);
        for (var, c) in coefficients {
            p = &p + &Self::var(arity, *var).scale(c.clone());
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            Some(d) => degrees.all(|x| x == d),
            None => true,
        }
    }

    /// The terms of maximum total degree.
    pub fn top_homogeneous_part(&self) -> Self {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the monomial with these exponents, zero if absent.
    pub fn coefficient_of(&self, exponents: &[u32]) -> C {
        assert_eq!(exponents.len(), self.arity, "exponent arity mismatch");
        self.terms.get(exponents).cloned().unwrap_or_else(C::zero)
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(Error::Contract(format!(
                "polynomial arity mismatch: {} vs {}",
                self.arity, other.arity
            )))
        }
    }

    fn accumulate(terms: &mut BTreeMap<Vec<u32>, C>, exps: Vec<u32>, c: C) {
        use std::collections::btree_map::Entry;
        match terms.entry(exps) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::accumulate(&mut terms, e.clone(), c.clone());
        }
        Ok(Polynomial {
            arity: self.arity,
            terms,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                Self::accumulate(&mut terms, exps, ca.clone() * cb.clone());
            }
        }
        Ok(Polynomial {
            arity: self.arity,
            terms,
        })
    }

    pub fn scale(&self, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Power by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, mut exponent: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.arity);
        while exponent > 0 {
            if exponent & 1 == 1 {
                acc = &acc * &base;
            }
            exponent >>= 1;
            if exponent > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn product<'a, I>(arity: usize, factors: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        C: 'a,
    {
        factors
            .into_iter()
            .fold(Self::one(arity), |acc, f| &acc * f)
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.arity, "point arity mismatch");
        let top = self.terms.keys().flatten().copied().max().unwrap_or(0) as usize;
        let powers: Vec<Vec<C>> = point
            .iter()
            .map(|x| {
                let mut p = vec![C::one()];
                for i in 0..top {
                    p.push(p[i].clone() * x.clone());
                }
                p
            })
            .collect();
        let mut total = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (p, &k) in powers.iter().zip(e) {
                if k > 0 {
                    term = term * p[k as usize].clone();
                }
            }
            total = total + term;
        }
        total
    }

    /// A monomial with nonzero coefficient whose exponent in every variable
    /// stays below `limits`; the one with the smallest largest exponent,
    /// ties broken by exponent order.
    pub fn find_admissible_monomial(&self, limits: &[usize]) -> Option<(Vec<u32>, C)> {
        assert_eq!(limits.len(), self.arity, "limit arity mismatch");
        self.terms
            .iter()
            .filter(|(e, _)| e.iter().zip(limits).all(|(&x, &l)| (x as usize) < l))
            .min_by_key(|(e, _)| (e.iter().copied().max().unwrap_or(0), (*e).clone()))
            .map(|(e, c)| (e.clone(), c.clone()))
    }
}

impl<C: Ring> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.try_add(rhs).expect("arity mismatch")
    }
}

impl<C: Ring> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.try_add(&-rhs).expect("arity mismatch")
    }
}

impl<C: Ring> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.try_mul(rhs).expect("arity mismatch")
    }
}

impl<C: Ring> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(-C::one())
    }
}

impl<C: Ring + Display> Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (var, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", var + 1)?,
                    _ => write!(f, "*x{}^{k}", var + 1)?,
                }
            }
        }
        Ok(())
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `prod_{i<j} (x_i - x_j)^(2s+1)` in `n` variables.
pub fn vandermonde_power(n: usize, s: u32) -> Polynomial<BigInt> {
    let mut acc = Polynomial::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let diff = &Polynomial::var(n, i) - &Polynomial::var(n, j);
            acc = &acc * &diff.pow(2 * s + 1);
        }
    }
    acc
}

/// Exponents `s(n-1) + i - 1` for `i = 1..=n`.
pub fn vandermonde_exponents(n: usize, s: u32) -> Vec<u32> {
    (0..n as u32).map(|i| s * (n as u32 - 1) + i).collect()
}

/// `((s+1)n)! / (n! (s+1)!^n)`, the absolute value of the coefficient at
/// [`vandermonde_exponents`] in [`vandermonde_power`].
pub fn vandermonde_coefficient_formula(n: usize, s: u32) -> BigUint {
    assert!(n >= 1, "need at least one variable");
    let s1 = u64::from(s) + 1;
    let numerator = factorial(s1 * n as u64);
    let denominator = factorial(n as u64) * factorial(s1).pow(n as u32);
    let (q, r) = numerator.div_rem(&denominator);
    debug_assert!(r.is_zero(), "multinomial quotient is exact");
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionMode {
    Undirected,
    Oriented,
}

impl ReductionMode {
    /// Total degree of the reduction polynomial on `n` vertices.
    pub fn degree(self, n: u32) -> u32 {
        match self {
            ReductionMode::Undirected => 4 * n - 7,
            ReductionMode::Oriented => 4 * n - 4,
        }
    }

    /// The monomial exponents `(a, b, c)` whose coefficient licenses the
    /// three-edge extension on `n` vertices.
    pub fn exponents(self, n: u32) -> [u32; 3] {
        let d = self.degree(n);
        let b = d / 3;
        match self {
            ReductionMode::Undirected => [d - 2 * b + 1, b, b - 1],
            ReductionMode::Oriented => [d - 2 * b, b, b],
        }
    }
}

impl fmt::Display for ReductionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionMode::Undirected => "undirected",
            ReductionMode::Oriented => "oriented",
        })
    }
}

fn check_reduction_n(n: u32) -> Result<()> {
    if n < 4 {
        return Err(Error::Contract(format!(
            "reduction polynomials need n >= 4, got {n}"
        )));
    }
    Ok(())
}

fn xs(arity: usize) -> Vec<Polynomial<BigInt>> {
    (0..arity).map(|i| Polynomial::var(arity, i)).collect()
}

/// `x1^(n-4) x2^(n-4) x3^(n-4) (x1+x2+x3)^(n-4) prod_{i<j} (x_i-x_j)^2 (x_i+x_j)`.
pub fn build_h_reduction_undirected(n: u32) -> Result<Polynomial<BigInt>> {
    check_reduction_n(n)?;
    let x = xs(3);
    let e = n - 4;
    let sum = &(&x[0] + &x[1]) + &x[2];
    let mut acc = Polynomial::monomial(vec![e, e, e], BigInt::one());
    acc = &acc * &sum.pow(e);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let diff = &x[i] - &x[j];
        acc = &acc * &(&diff.pow(2) * &(&x[i] + &x[j]));
    }
    Ok(acc)
}

/// `(-x1)^(n-4) (-x2)^(n-4) (-x3)^(n-4) (x1+x2+x3)^(n-4)
///  prod_{i<j} (x_i^2 - x_j^2)(x_j - x_i)
///  (2x1+x2+x3)(x1+2x2+x3)(x1+x2+2x3)`.
pub fn build_h_reduction_oriented(n: u32) -> Result<Polynomial<BigInt>> {
    check_reduction_n(n)?;
    let x = xs(3);
    let e = n - 4;
    let sum = &(&x[0] + &x[1]) + &x[2];
    let sign = if (3 * e).is_multiple_of(2) { 1 } else { -1 };
    let mut acc = Polynomial::monomial(vec![e, e, e], BigInt::from(sign));
    acc = &acc * &sum.pow(e);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let sq = &(&x[i] * &x[i]) - &(&x[j] * &x[j]);
        acc = &acc * &(&sq * &(&x[j] - &x[i]));
    }
    for xi in &x {
        acc = &acc * &(&sum + xi);
    }
    Ok(acc)
}

pub fn build_h_reduction(n: u32, mode: ReductionMode) -> Result<Polynomial<BigInt>> {
    match mode {
        ReductionMode::Undirected => build_h_reduction_undirected(n),
        ReductionMode::Oriented => build_h_reduction_oriented(n),
    }
}

fn serialize_display<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// The coefficient of the designated monomial of a reduction polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCertificate {
    pub mode: ReductionMode,
    pub n: u32,
    pub abc: [u32; 3],
    #[serde(serialize_with = "serialize_display")]
    pub coefficient: BigInt,
    pub nonzero: bool,
}

/// Expands the reduction polynomial for `n` and extracts the coefficient at
/// the designated `(a, b, c)`. A zero coefficient is reported, not hidden.
pub fn certify_reduction_monomial(n: u32, mode: ReductionMode) -> Result<CoefficientCertificate> {
    let h = build_h_reduction(n, mode)?;
    let abc = mode.exponents(n);
    let coefficient = h.coefficient_of(&abc);
    Ok(CoefficientCertificate {
        mode,
        n,
        abc,
        nonzero: !coefficient.is_zero(),
        coefficient,
    })
}
