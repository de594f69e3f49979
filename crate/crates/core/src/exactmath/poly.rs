use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::Coeff;

/// Variable selector for a [`BiPoly`]: `First` is `x` (or `n1`), `Second` is
/// `y` (or `n2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    First,
    Second,
}

impl Var {
    /// `1 -> First`, `2 -> Second`.
    pub fn from_index(index: u8) -> Option<Self> {
        match index {
            1 => Some(Var::First),
            2 => Some(Var::Second),
            _ => None,
        }
    }

    fn exponents(self, e: u32) -> (u32, u32) {
        match self {
            Var::First => (e, 0),
            Var::Second => (0, e),
        }
    }
}

/// Sparse polynomial in two variables.
///
/// Terms are kept in a `BTreeMap` keyed by the exponent pair `(e_x, e_y)`, so
/// iteration is lexicographic and zero coefficients are never stored. Two
/// polynomials are equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Coeff> Default for BiPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coeff> BiPoly<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: T, ex: u32, ey: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(ex, ey, c);
        p
    }

    /// The polynomial consisting of the single variable `var`.
    pub fn var(var: Var) -> Self {
        let (ex, ey) = var.exponents(1);
        Self::monomial(T::one(), ex, ey)
    }

    /// `a * var + b`.
    pub fn linear(var: Var, a: T, b: T) -> Self {
        let (ex, ey) = var.exponents(1);
        let mut p = Self::monomial(a, ex, ey);
        p.add_term(0, 0, b);
        p
    }

    /// Builds a polynomial from `(e_x, e_y, coefficient)` triples; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, T)>,
    {
        let mut p = Self::zero();
        for (ex, ey, c) in terms {
            p.add_term(ex, ey, c);
        }
        p
    }

    /// Univariate polynomial `Σ coeffs[i] · var^i`.
    pub fn from_univariate(var: Var, coeffs: &[T]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| {
            let (ex, ey) = var.exponents(i as u32);
            (ex, ey, c.clone())
        }))
    }

    pub fn add_term(&mut self, ex: u32, ey: u32, c: T) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((ex, ey)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &T)> + '_ {
        self.terms.iter().map(|(&(ex, ey), c)| (ex, ey, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, ex: u32, ey: u32) -> T {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(ex, ey)| ex + ey).max()
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(ex, ey)| match var {
                Var::First => ex,
                Var::Second => ey,
            })
            .max()
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms().map(|(ex, ey, v)| (ex, ey, v.clone() * c.clone())))
    }

    /// Applies `x ∂_x − y ∂_y`: the monomial `x^a y^b` maps to `(a − b) x^a y^b`.
    pub fn diffop(&self) -> Self {
        Self::from_terms(self.terms().map(|(ex, ey, c)| {
            let w = T::from_int(ex as i64 - ey as i64);
            (ex, ey, c.clone() * w)
        }))
    }

    /// `p(y, x)`.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms().map(|(ex, ey, c)| (ey, ex, c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `(x, y)` by Horner-free direct summation.
    pub fn eval(&self, x: &T, y: &T) -> T {
        let mut acc = T::zero();
        for (ex, ey, c) in self.terms() {
            acc = acc + c.clone() * pow_t(x, ex) * pow_t(y, ey);
        }
        acc
    }

    pub fn map_coeffs<U: Coeff>(&self, mut f: impl FnMut(&T) -> U) -> BiPoly<U> {
        BiPoly::from_terms(self.terms().map(|(ex, ey, c)| (ex, ey, f(c))))
    }
}

fn pow_t<T: Coeff>(base: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

impl<T: Coeff> Add<&BiPoly<T>> for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Coeff> Sub<&BiPoly<T>> for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<T: Coeff> Mul<&BiPoly<T>> for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for (ax, ay, a) in self.terms() {
            for (bx, by, b) in rhs.terms() {
                out.add_term(ax + bx, ay + by, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<T: Coeff> Neg for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        BiPoly::from_terms(self.terms().map(|(ex, ey, c)| (ex, ey, -c.clone())))
    }
}

impl<T: Coeff> Neg for BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        -&self
    }
}

impl<T: Coeff> AddAssign<&BiPoly<T>> for BiPoly<T> {
    fn add_assign(&mut self, rhs: &BiPoly<T>) {
        for (ex, ey, c) in rhs.terms() {
            self.add_term(ex, ey, c.clone());
        }
    }
}

impl<T: Coeff> SubAssign<&BiPoly<T>> for BiPoly<T> {
    fn sub_assign(&mut self, rhs: &BiPoly<T>) {
        for (ex, ey, c) in rhs.terms() {
            self.add_term(ex, ey, -c.clone());
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr<BiPoly<T>> for BiPoly<T> {
            type Output = BiPoly<T>;
            fn $m(self, rhs: BiPoly<T>) -> BiPoly<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Coeff> $tr<&BiPoly<T>> for BiPoly<T> {
            type Output = BiPoly<T>;
            fn $m(self, rhs: &BiPoly<T>) -> BiPoly<T> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Coeff> fmt::Debug for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter())
            .finish()
    }
}
