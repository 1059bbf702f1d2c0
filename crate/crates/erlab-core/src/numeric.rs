//! Exact integer arithmetic for threshold comparisons of the form
//! `count vs n^(a/b)`, plus certified dyadic interval arithmetic for the
//! recursion-bound checks.
//!
//! Solvers never compare against floating-point powers: every cutoff of the
//! form `|N(X)| >= n^(1-beta)` is decided by an equivalent integer
//! inequality (raise both sides to the denominator), so results are
//! bit-identical across platforms.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Smallest integer `T` with `T >= n^(num/den)` (`num, den > 0`).
pub fn ceil_pow(n: u64, num: u32, den: u32) -> u64 {
    assert!(den > 0);
    let target = big(n).pow(num);
    let mut t = target.nth_root(den);
    if t.pow(den) < target {
        t += 1u32;
    }
    t.to_u64().expect("ceil of n^(num/den) fits u64 at desk scale")
}

/// `count < n^(num/den)` with a possibly negative numerator.
pub fn count_lt_pow(count: u64, n: u64, num: i64, den: u64) -> bool {
    assert!(den > 0 && n >= 1);
    if num >= 0 {
        big(count).pow(den as u32) < big(n).pow(num as u32)
    } else {
        // n^(num/den) <= 1, and positive; only 0 lies below it.
        count == 0
    }
}

/// `count >= n^(num/den)`.
pub fn count_ge_pow(count: u64, n: u64, num: i64, den: u64) -> bool {
    !count_lt_pow(count, n, num, den)
}

/// `a >= b * n^(-p/q)`, all quantities nonnegative.
pub fn ge_scaled_neg_pow(a: u64, b: u64, n: u64, p: u32, q: u32) -> bool {
    assert!(q > 0);
    big(a).pow(q) * big(n).pow(p) >= big(b).pow(q)
}

/// `num/den >= n^(-p/q)` for a nonnegative rational `num/den`.
pub fn ratio_ge_neg_pow(num: u128, den: u128, n: u64, p: u32, q: u32) -> bool {
    assert!(den > 0 && q > 0);
    BigUint::from(num).pow(q) * big(n).pow(p) >= BigUint::from(den).pow(q)
}

/// Exact `floor(b * n^(-p/q))`.
pub fn floor_scaled_neg_pow(b: u64, n: u64, p: u32, q: u32) -> u64 {
    assert!(q > 0 && n >= 1);
    let rhs = big(b).pow(q);
    let scale = big(n).pow(p);
    // seed from the rounded-down quotient, then correct to the exact floor
    let mut m = (&rhs / &scale).nth_root(q);
    while (&m + BigUint::one()).pow(q) * &scale <= rhs {
        m += 1u32;
    }
    while !m.is_zero() && m.clone().pow(q) * &scale > rhs {
        m -= 1u32;
    }
    m.to_u64().expect("floor of b * n^(-p/q) fits u64")
}

/// `g_y >= 2^(1-k) * n^(-k) * g`, the dense-pair candidate condition.
pub fn good_subset_threshold(g_y: u64, g: u64, n: u64, k: u32) -> bool {
    assert!(k >= 1);
    big(g_y) * big(2).pow(k - 1) * big(n).pow(k) >= big(g)
}

/// `C(n, k)` saturating at `u128::MAX`; used for search budgets.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// `round(p * 2^64)` for a probability; feeding [`crate::graph::Graph::random_gnp_threshold`].
pub fn probability_threshold(p: f64) -> u128 {
    debug_assert!((0.0..=1.0).contains(&p));
    (p * 18_446_744_073_709_551_616.0) as u128
}

/// Floating-point `n^(num/den)` for report-only reference curves.
pub fn pow_f64(n: u64, num: f64, den: f64) -> f64 {
    (n as f64).powf(num / den)
}

// ---------------------------------------------------------------------------
// Fixed-point log2 and the G(n,p) schedule threshold
// ---------------------------------------------------------------------------

const LOG_FRAC_BITS: u32 = 64;

/// `floor(2^64 * log2(n))` for `n >= 2`, by the classic squaring recurrence
/// carried out in 96-bit fixed point (floor-directed; the result is used
/// only as a sampling threshold, never in an assertion).
pub fn fixed_log2(n: u64) -> BigUint {
    assert!(n >= 2);
    let int_part = 63 - n.leading_zeros() as u64;
    let prec: u32 = 96;
    // x = n / 2^int_part in [1, 2), as a mantissa scaled by 2^prec
    let mut x = (big(n) << prec) >> (int_part as u32);
    let two = BigUint::one() << (prec + 1);
    let mut frac = BigUint::zero();
    for _ in 0..LOG_FRAC_BITS {
        frac <<= 1;
        x = (&x * &x) >> prec;
        if x >= two {
            x >>= 1;
            frac += 1u32;
        }
    }
    (big(int_part) << LOG_FRAC_BITS) + frac
}

/// 64-bit fixed-point threshold realizing `p = n^(-2/r) / log2(n)`: returns
/// `t ~ floor(p * 2^64)` via pure integer arithmetic, so the schedule is
/// identical on every platform.
pub fn gnp_schedule_threshold(n: u64, r: u64) -> Result<u128> {
    if n < 3 {
        return Err(Error::domain(format!(
            "schedule needs n >= 3 for a positive log, got {n}"
        )));
    }
    let r32 = u32::try_from(r)
        .map_err(|_| Error::domain(format!("schedule exponent r = {r} too large")))?;
    // x = floor(2^64 * n^(2/r)) via the r-th root of n^2 * 2^(64 r)
    let x = ((big(n).pow(2)) << (64 * r32)).nth_root(r32);
    let l = fixed_log2(n);
    let t: BigUint = (BigUint::one() << 192u32) / (x * l);
    Ok(t.to_u128().unwrap_or(u128::MAX).min(1u128 << 64))
}

// ---------------------------------------------------------------------------
// Certified positive intervals in dyadic fixed point
// ---------------------------------------------------------------------------

/// Fraction bits used by [`PosInterval`].
pub const INTERVAL_FRAC_BITS: u32 = 96;

/// A certified enclosure `[lo, hi] * 2^-96` of a positive real. All
/// operations round outward, so any comparison that succeeds on the safe
/// sides is a proof.
#[derive(Clone, Debug)]
pub struct PosInterval {
    lo: BigUint,
    hi: BigUint,
}

impl PosInterval {
    const Q: u32 = INTERVAL_FRAC_BITS;

    pub fn from_u64(x: u64) -> Self {
        let m = big(x) << Self::Q;
        PosInterval { lo: m.clone(), hi: m }
    }

    pub fn from_ratio(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let scaled = big(num) << Self::Q;
        let lo = &scaled / &big(den);
        let hi = (&scaled + &big(den) - BigUint::one()) / &big(den);
        PosInterval { lo, hi }
    }

    pub fn mul(&self, other: &PosInterval) -> PosInterval {
        let lo = (&self.lo * &other.lo) >> Self::Q;
        let hi = ((&self.hi * &other.hi) >> Self::Q) + BigUint::one();
        PosInterval { lo, hi }
    }

    pub fn div(&self, other: &PosInterval) -> PosInterval {
        assert!(!other.lo.is_zero(), "division by an interval touching zero");
        let lo = (&self.lo << Self::Q) / &other.hi;
        let hi = (&self.hi << Self::Q) / &other.lo + BigUint::one();
        PosInterval { lo, hi }
    }

    pub fn add(&self, other: &PosInterval) -> PosInterval {
        PosInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// `self - other`, which must be certainly positive.
    pub fn sub(&self, other: &PosInterval) -> Result<PosInterval> {
        if self.lo <= other.hi {
            return Err(Error::domain(
                "interval subtraction is not certainly positive".to_string(),
            ));
        }
        Ok(PosInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        })
    }

    pub fn nth_root(&self, n: u32) -> PosInterval {
        assert!(n >= 1);
        let scale = |m: &BigUint| (m << (Self::Q * (n - 1))).nth_root(n);
        PosInterval {
            lo: scale(&self.lo),
            hi: scale(&self.hi) + BigUint::one(),
        }
    }

    pub fn recip(&self) -> PosInterval {
        PosInterval::from_u64(1).div(self)
    }

    /// `2^self` for a nonnegative interval.
    pub fn exp2(&self) -> PosInterval {
        PosInterval {
            lo: exp2_mantissa_floor(&self.lo),
            hi: exp2_mantissa_floor(&self.hi) + big(2u64),
        }
    }

    /// `2^-self`.
    pub fn exp2_neg(&self) -> PosInterval {
        self.exp2().recip()
    }

    /// Certified `self <= other`.
    pub fn certainly_le(&self, other: &PosInterval) -> bool {
        self.hi <= other.lo
    }

    /// Certified `self >= other`.
    pub fn certainly_ge(&self, other: &PosInterval) -> bool {
        self.lo >= other.hi
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(Self::Q as i32)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(Self::Q as i32)
    }
}

/// Floor-directed `2^(m / 2^96)` as a 2^-96-scaled mantissa.
fn exp2_mantissa_floor(m: &BigUint) -> BigUint {
    let q = PosInterval::Q;
    let int_part = (m >> q).to_u32().expect("exponent integer part fits u32");
    let frac = m - (big(int_part as u64) << q);
    // product over set bits j of frac: 2^(2^-j), each term sqrt-iterated from 2
    let mut acc = BigUint::one() << q;
    let mut term = big(2u64) << q; // running 2^(2^-j), starts at j = 0
    for j in 1..=q {
        term = (&term << q).sqrt();
        if ((&frac >> (q - j)) & BigUint::one()) == BigUint::one() {
            acc = (&acc * &term) >> q;
        }
    }
    acc << int_part
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_pow_basics() {
        assert_eq!(ceil_pow(16, 1, 2), 4); // 16^(1/2) exactly
        assert_eq!(ceil_pow(17, 1, 2), 5);
        assert_eq!(ceil_pow(20, 1, 2), 5); // sqrt(20) = 4.47..
        assert_eq!(ceil_pow(1000, 2, 3), 100);
        assert_eq!(ceil_pow(1001, 2, 3), 101);
    }

    #[test]
    fn power_comparisons() {
        // 10 >= 20^(1/2) = 4.47
        assert!(count_ge_pow(10, 20, 1, 2));
        assert!(!count_lt_pow(10, 20, 1, 2));
        // 4 < 20^(1/2)
        assert!(count_lt_pow(4, 20, 1, 2));
        // boundary: 4 >= 16^(1/2) (equality counts)
        assert!(count_ge_pow(4, 16, 1, 2));
        // negative exponent: only 0 sits below n^(-1/2)
        assert!(count_lt_pow(0, 100, -1, 2));
        assert!(!count_lt_pow(1, 100, -1, 2));
    }

    #[test]
    fn scaled_comparisons() {
        // a >= b * n^(-1/2) with n = 100: b/10
        assert!(ge_scaled_neg_pow(5, 50, 100, 1, 2));
        assert!(ge_scaled_neg_pow(5, 40, 100, 1, 2));
        assert!(!ge_scaled_neg_pow(3, 40, 100, 1, 2));
        assert_eq!(floor_scaled_neg_pow(50, 100, 1, 2), 5);
        assert_eq!(floor_scaled_neg_pow(49, 100, 1, 2), 4);
        assert_eq!(floor_scaled_neg_pow(7, 4, 1, 2), 3); // floor(7/2)
    }

    #[test]
    fn ratio_comparison() {
        // density 1/10 vs n^(-1/2), n = 100: equal -> ge holds
        assert!(ratio_ge_neg_pow(1, 10, 100, 1, 2));
        assert!(!ratio_ge_neg_pow(1, 11, 100, 1, 2));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 4), 91_390);
        assert_eq!(binomial(4, 7), 0);
        assert_eq!(binomial(1000, 2), 499_500);
    }

    #[test]
    fn log2_fixed_point() {
        // exact on powers of two
        assert_eq!(fixed_log2(256), BigUint::from(8u64) << 64);
        // log2(10) = 3.3219280948873623...
        let l = fixed_log2(10);
        let approx = l.to_f64().unwrap() / 2f64.powi(64);
        assert!((approx - 3.321_928_094_887_362).abs() < 1e-12);
    }

    #[test]
    fn schedule_threshold_exact_on_powers_of_two() {
        // n = 256, r = 4: p = 256^(-1/2)/8 = 1/128
        let t = gnp_schedule_threshold(256, 4).unwrap();
        assert_eq!(t, 1u128 << 57);
        // r huge: p -> 1/log2(n); n = 1024 gives ~0.1
        let t = gnp_schedule_threshold(1024, 1_000_000).unwrap();
        let p = t as f64 / 2f64.powi(64);
        assert!((p - 0.1).abs() < 1e-3, "p = {p}");
    }

    #[test]
    fn interval_roots_and_exp2() {
        let k = PosInterval::from_u64(60);
        let sqrt = k.nth_root(2);
        assert!(sqrt.lo_f64() <= 7.745_966_7 && 7.745_966_6 <= sqrt.hi_f64());
        let cbrt = k.nth_root(3);
        assert!(cbrt.lo_f64() <= 3.914_867_7 && 3.914_867_6 <= cbrt.hi_f64());
        // 2^sqrt(60) = 214.45...
        let e = sqrt.exp2();
        assert!(e.lo_f64() <= 214.46 && e.hi_f64() >= 214.45);
        assert!((e.hi_f64() - e.lo_f64()) < 1e-6);
        // 2^-sqrt(60)
        let en = sqrt.exp2_neg();
        assert!(en.lo_f64() <= 1.0 / 214.45 && en.hi_f64() >= 1.0 / 214.46);
    }

    #[test]
    fn interval_certified_comparisons() {
        let a = PosInterval::from_ratio(1, 3);
        let b = PosInterval::from_ratio(1, 2);
        assert!(a.certainly_le(&b));
        assert!(b.certainly_ge(&a));
        assert!(!b.certainly_le(&a));
    }
}
