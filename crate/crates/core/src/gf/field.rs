use std::fmt;

use super::numtheory::{checked_prime_power, distinct_prime_factors, is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// `GF(p^d)` in the polynomial basis `1, x, .., x^(d-1)` modulo a fixed
/// monic irreducible polynomial.
///
/// The modulus is the least monic irreducible of degree `d` when monic
/// polynomials `x^d + c_(d-1) x^(d-1) + .. + c_0` are ordered by the integer
/// `sum c_i p^i`. The primitive element is the least element, in label
/// order, of multiplicative order `p^d - 1`.
///
/// Elements are labelled by `sum c_i p^i`, a bijection onto `0..p^d` with
/// zero labelled 0 and one labelled 1; every group constructor in the crate
/// uses this labelling for points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    d: u32,
    order: u64,
    /// Low-to-high coefficients, length `d + 1`, leading 1.
    modulus: Vec<u64>,
    primitive: Vec<u64>,
    tag: u64,
}

/// An element of some [`FieldCtx`]; coefficients low-to-high.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    tag: u64,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement{:?}", self.coeffs)
    }
}

impl FieldCtx {
    pub fn new(p: u64, d: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::InvalidParameters("degree d must be at least 1".into()));
        }
        let order = checked_prime_power(p, d).ok_or(Error::FieldTooLarge { p, d })?;
        let modulus = least_irreducible(p, d);
        let tag = modulus
            .iter()
            .chain([p, d as u64].iter())
            .fold(0xcbf2_9ce4_8422_2325u64, |h, &c| {
                (h ^ c).wrapping_mul(0x0100_0000_01b3)
            });
        let mut ctx = FieldCtx {
            p,
            d,
            order,
            modulus,
            primitive: Vec::new(),
            tag,
        };
        ctx.primitive = ctx.find_primitive();
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of field elements, `p^d`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.wrap(self.primitive.clone())
    }

    fn wrap(&self, coeffs: Vec<u64>) -> FieldElement {
        FieldElement {
            coeffs,
            tag: self.tag,
        }
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if x.tag != self.tag {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(vec![0; self.d as usize])
    }

    pub fn one(&self) -> FieldElement {
        self.decode(1)
    }

    pub fn element(&self, label: u64) -> Result<FieldElement> {
        if label >= self.order {
            return Err(Error::InvalidParameters(format!(
                "label {label} outside GF({})",
                self.order
            )));
        }
        Ok(self.decode(label))
    }

    fn decode(&self, mut label: u64) -> FieldElement {
        let mut coeffs = vec![0; self.d as usize];
        for c in coeffs.iter_mut() {
            *c = label % self.p;
            label /= self.p;
        }
        self.wrap(coeffs)
    }

    pub fn label(&self, x: &FieldElement) -> u64 {
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Every element in label order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|l| self.decode(l))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    pub(crate) fn add_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| add_mod(x, y, self.p))
            .collect();
        self.wrap(coeffs)
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        Ok(self.wrap(coeffs))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    pub(crate) fn mul_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut c = poly_mulmod(&a.coeffs, &b.coeffs, &self.modulus, self.p);
        c.resize(self.d as usize, 0);
        self.wrap(c)
    }

    pub fn pow(&self, a: &FieldElement, exp: u64) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.pow_raw(a, exp))
    }

    pub(crate) fn pow_raw(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            base = self.mul_raw(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::InvalidParameters("zero has no inverse".into()));
        }
        Ok(self.pow_raw(a, self.order - 2))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// `x^(p^j)`; `j` is taken modulo `d`.
    pub fn frobenius(&self, x: &FieldElement, j: u32) -> Result<FieldElement> {
        self.check(x)?;
        Ok(self.frobenius_raw(x, j))
    }

    pub(crate) fn frobenius_raw(&self, x: &FieldElement, j: u32) -> FieldElement {
        (0..j % self.d).fold(x.clone(), |acc, _| self.pow_raw(&acc, self.p))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: &FieldElement) -> Result<u64> {
        self.check(x)?;
        if self.is_zero(x) {
            return Err(Error::InvalidParameters("zero has no multiplicative order".into()));
        }
        let mut ord = self.order - 1;
        for r in distinct_prime_factors(self.order - 1) {
            while ord.is_multiple_of(r) && self.pow_raw(x, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    fn find_primitive(&self) -> Vec<u64> {
        let n = self.order - 1;
        let primes = distinct_prime_factors(n);
        let one = self.one();
        (1..self.order)
            .map(|l| self.decode(l))
            .find(|x| primes.iter().all(|&r| self.pow_raw(x, n / r) != one))
            .expect("a finite field has a primitive element")
            .coeffs
    }
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// `a * b mod f` over `GF(p)`, with `f` monic.
fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
    }
    poly_rem_monic(prod, f, p)
}

fn poly_rem_monic(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    trim(&mut a);
    while a.len() > d {
        let lead = *a.last().expect("nonempty");
        let shift = a.len() - 1 - d;
        for (i, &fc) in f.iter().enumerate() {
            let sub = mul_mod(lead, fc, p);
            a[shift + i] = add_mod(a[shift + i], p - sub % p, p);
        }
        trim(&mut a);
    }
    a
}

fn poly_powmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem_monic(base.to_vec(), f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead_inv = pow_mod(*b.last().expect("nonempty"), p - 2, p);
        let monic: Vec<u64> = b.iter().map(|&c| mul_mod(c, lead_inv, p)).collect();
        let r = poly_rem_monic(a, &monic, p);
        a = monic;
        b = r;
    }
    a
}

/// Ben-Or test: `f` of degree `d` is irreducible iff
/// `gcd(f, x^(p^i) - x) = 1` for `1 <= i <= d/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d <= 1 {
        return d == 1;
    }
    if f[0] == 0 {
        return false;
    }
    if p <= 64 && (0..p).any(|x| eval(f, x, p) == 0) {
        return false;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = poly_powmod(&h, p, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = add_mod(diff[1], p - 1, p);
        trim(&mut diff);
        if diff.is_empty() || poly_gcd(f, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter()
        .rev()
        .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

fn least_irreducible(p: u64, d: u32) -> Vec<u64> {
    let d = d as usize;
    let mut f = vec![0u64; d + 1];
    f[d] = 1;
    let mut label: u64 = 0;
    loop {
        let mut l = label;
        for c in f.iter_mut().take(d) {
            *c = l % p;
            l /= p;
        }
        if is_irreducible(&f, p) {
            return f;
        }
        label += 1;
    }
}
