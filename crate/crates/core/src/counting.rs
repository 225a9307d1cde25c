//! Exact counts of open partitions of V-posets.
//!
//! `NP(n)` is the number of open partitions of the V-poset with two chains of
//! `n` vertices each. It has four equivalent expressions, all computed here
//! over arbitrary-precision integers:
//!
//! - [`np_double_sum`]: `Σ_k Σ_j C(n-1,k-1) C(n-1,j-1) min(k,j)`, which also
//!   covers chains of different lengths;
//! - [`np_sum_of_squares`]: `Σ_j (Σ_{k>=j} C(n-1,k-1))²`;
//! - [`np_product_minus`]: `(n+1) 2^(2n-3)` minus the illegal pairings;
//! - [`np_closed`]: `(n+1) 2^(2n-3) - (n-1)/2 C(2n-2,n-1)`.
//!
//! The last two are fractional-looking at `n = 1`; they are evaluated as
//! halves of even integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type BigCount = BigUint;
pub type Rational = BigRational;

pub fn binomial(a: u64, b: i64) -> BigCount {
    if b < 0 || b as u64 > a {
        return BigCount::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigCount::one();
    for i in 0..b {
        // acc holds C(a, i); the product is divisible by i + 1
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n-1, i)` for `i = 0..n`.
fn binomial_row(n: u64) -> Vec<BigCount> {
    let top = n - 1;
    let mut row = Vec::with_capacity(n as usize);
    let mut acc = BigCount::one();
    for i in 0..n {
        if i > 0 {
            acc *= top - i + 1;
            acc /= i;
        }
        row.push(acc.clone());
    }
    row
}

fn pow2(e: u64) -> BigCount {
    BigCount::one() << e
}

fn assert_positive(name: &str, n: u64) {
    assert!(n >= 1, "{name} requires n >= 1");
}

/// Open partitions of a chain of `n` vertices with exactly `k` blocks.
pub fn chain_open_count(n: u64, k: u64) -> BigCount {
    assert_positive("chain_open_count", n);
    assert!(k >= 1, "chain_open_count requires k >= 1");
    binomial(n - 1, k as i64 - 1)
}

/// Open partitions of the V-poset with chain lengths `m` and `n`.
pub fn np_double_sum(m: u64, n: u64) -> BigCount {
    assert_positive("np_double_sum", m);
    assert_positive("np_double_sum", n);
    let left = binomial_row(m);
    let right = binomial_row(n);
    let mut total = BigCount::zero();
    for (k, ck) in (1u64..).zip(&left) {
        let mut inner = BigCount::zero();
        for (j, cj) in (1u64..).zip(&right) {
            inner += cj * k.min(j);
        }
        total += ck * inner;
    }
    total
}

pub fn np_sum_of_squares(n: u64) -> BigCount {
    assert_positive("np_sum_of_squares", n);
    let row = binomial_row(n);
    // tail sums Σ_{k>=j} C(n-1,k-1), taken from the top down
    let mut tail = BigCount::zero();
    let mut total = BigCount::zero();
    for c in row.iter().rev() {
        tail += c;
        total += &tail * &tail;
    }
    total
}

/// `Σ_{k=1..n} Σ_{h<k} (k-h) C(n-1,h-1) C(n-1,k-1)`: pairings whose join
/// level exceeds the block count of the left partition.
pub fn illegal_pairings_sum(n: u64) -> BigCount {
    assert_positive("illegal_pairings_sum", n);
    let row = binomial_row(n);
    let mut total = BigCount::zero();
    for (k, ck) in (1u64..).zip(&row) {
        let mut inner = BigCount::zero();
        for (h, ch) in (1u64..k).zip(&row) {
            inner += ch * (k - h);
        }
        total += ck * inner;
    }
    total
}

/// `2^(n-1) · Σ_j j C(n-1,j-1)`: left chain partitions times (right chain
/// partition, level) pairs.
pub fn minuend_pairs_count(n: u64) -> BigCount {
    assert_positive("minuend_pairs_count", n);
    let row = binomial_row(n);
    let levels: BigCount = (1u64..).zip(&row).map(|(j, c)| c * j).sum();
    pow2(n - 1) * levels
}

/// `2 · (n+1) 2^(2n-3)`, i.e. `(n+1) 4^(n-1)`.
fn doubled_minuend(n: u64) -> BigCount {
    pow2(2 * (n - 1)) * (n + 1)
}

fn exact_half(x: BigCount) -> BigCount {
    let (half, rem) = x.div_rem(&BigCount::from(2u32));
    assert!(rem.is_zero(), "expected an even value");
    half
}

pub fn np_product_minus(n: u64) -> BigCount {
    assert_positive("np_product_minus", n);
    let s = illegal_pairings_sum(n);
    exact_half(doubled_minuend(n) - s * 2u32)
}

/// `(n-1)/2 · C(2n-2, n-1)`, equal to [`illegal_pairings_sum`].
pub fn hirschhorn_rhs(n: u64) -> BigCount {
    assert_positive("hirschhorn_rhs", n);
    exact_half(central_term(n))
}

/// `(n-1) C(2n-2, n-1)`
fn central_term(n: u64) -> BigCount {
    binomial(2 * n - 2, n as i64 - 1) * (n - 1)
}

pub fn np_closed(n: u64) -> BigCount {
    assert_positive("np_closed", n);
    exact_half(doubled_minuend(n) - central_term(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    DoubleSum,
    Squares,
    ProductMinus,
    Closed,
}

impl Formula {
    pub const ALL: [Formula; 4] = [
        Formula::DoubleSum,
        Formula::Squares,
        Formula::ProductMinus,
        Formula::Closed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::DoubleSum => "double-sum",
            Formula::Squares => "squares",
            Formula::ProductMinus => "product-minus",
            Formula::Closed => "closed",
        }
    }

    /// `NP(n)` by this formula.
    pub fn eval(self, n: u64) -> BigCount {
        match self {
            Formula::DoubleSum => np_double_sum(n, n),
            Formula::Squares => np_sum_of_squares(n),
            Formula::ProductMinus => np_product_minus(n),
            Formula::Closed => np_closed(n),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Formula::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown formula `{s}`"))
    }
}

/// `[NP(1), ..., NP(max_n)]`.
pub fn np_sequence(max_n: u64, formula: Formula) -> Vec<BigCount> {
    (1..=max_n).map(|n| formula.eval(n)).collect()
}

fn check_lemma_inputs(a: &[Rational], b: &[Rational]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptySequence);
    }
    for seq in [a, b] {
        let n = seq.len();
        for (i, x) in seq.iter().enumerate() {
            if !x.is_positive() {
                return Err(Error::NonPositiveEntry { index: i });
            }
            if *x != seq[n - 1 - i] {
                return Err(Error::AsymmetricSequence { index: i });
            }
        }
    }
    Ok(())
}

/// `Σ_{h,k} min(h,k) a_h b_k` for symmetric positive sequences (1-based
/// indices).
pub fn lemma1_lhs(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    check_lemma_inputs(a, b)?;
    let mut total = Rational::zero();
    for (h, ah) in (1i64..).zip(a) {
        for (k, bk) in (1i64..).zip(b) {
            total += ah * bk * Rational::from_integer(h.min(k).into());
        }
    }
    Ok(total)
}

/// `(n+1)/2 · A·B - Σ_{h<k} (k-h) a_h b_k` with `A = Σa`, `B = Σb`. The
/// `h = k` terms vanish, so only strict pairs are summed.
pub fn lemma1_rhs(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    check_lemma_inputs(a, b)?;
    let n = a.len() as i64;
    let sum_a: Rational = a.iter().sum();
    let sum_b: Rational = b.iter().sum();
    let coeff = Rational::new(BigInt::from(n + 1), BigInt::from(2));
    let mut subtrahend = Rational::zero();
    for (k, bk) in (1i64..).zip(b) {
        for (h, ah) in (1i64..k).zip(a) {
            subtrahend += ah * bk * Rational::from_integer((k - h).into());
        }
    }
    Ok(coeff * sum_a * sum_b - subtrahend)
}

/// The binomial row `C(n-1, i-1)`, `i = 1..n`, as rationals.
pub fn binomial_sequence(n: u64) -> Vec<Rational> {
    assert_positive("binomial_sequence", n);
    binomial_row(n)
        .into_iter()
        .map(|c| Rational::from_integer(c.into()))
        .collect()
}
