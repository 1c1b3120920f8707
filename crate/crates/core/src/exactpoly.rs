//! Exact rational polynomials, Sturm chains and real-root counting.
//!
//! Everything here is closed over `BigRational`; nothing is rounded. Chain
//! members are rescaled to primitive integer form after each division, which
//! keeps coefficients small and leaves sign-variation counts unchanged.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `"p/q"`, an integer, or a plain decimal such as `"1.4"` (read exactly
/// as `7/5`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: '{s}'"));
    if let Some((num, den)) = t.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => BigInt::from_str(digits).map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let mag = Rational::new(int_part * &scale + frac_part, scale);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad())
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Univariate polynomial with ascending rational coefficients. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        RationalPoly::from_i64(&[0, 1])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RationalPoly::new(coeffs.iter().map(|&c| ri(c)).collect())
    }

    /// Product of `(x − r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(RationalPoly::constant(ri(1)), |acc, r| {
            acc * RationalPoly::new(vec![-r.clone(), ri(1)])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign_of(&self.eval(x))
    }

    /// Horner evaluation with coefficients rounded to `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        RationalPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * ri(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Quotient and remainder with `self = q·d + r`, `deg r < deg d`.
    pub fn divmod(&self, d: &RationalPoly) -> Result<(RationalPoly, RationalPoly)> {
        let dd = d.degree().ok_or(Error::ZeroDivisor)?;
        let lead = d.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RationalPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((RationalPoly::new(quot), RationalPoly::new(rem)))
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        self.scale(&Rational::new(den_lcm, num_gcd))
    }
}

impl Add for RationalPoly {
    type Output = RationalPoly;

    fn add(self, r: RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(r.coeffs.len());
        let get = |p: &RationalPoly, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
        RationalPoly::new((0..n).map(|k| get(&self, k) + get(&r, k)).collect())
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;

    fn sub(self, r: RationalPoly) -> RationalPoly {
        self + (-r)
    }
}

impl Mul for RationalPoly {
    type Output = RationalPoly;

    fn mul(self, r: RationalPoly) -> RationalPoly {
        if self.is_zero() || r.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + r.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in r.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag.is_one() && k > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 if unit => f.write_str("M")?,
                1 => f.write_str("*M")?,
                _ if unit => write!(f, "M^{k}")?,
                _ => write!(f, "*M^{k}")?,
            }
        }
        Ok(())
    }
}

/// `p₀, p₀′, −rem(p₀, p₁), …` up to the last nonzero remainder, each member
/// rescaled to primitive integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<RationalPoly>,
}

impl SturmChain {
    pub fn new(p: &RationalPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidParameter("Sturm chain of the zero polynomial".into()));
        }
        let mut polys = vec![p.primitive_part()];
        let d = p.derivative();
        if !d.is_zero() {
            polys.push(d.primitive_part());
        }
        while polys.len() >= 2 {
            let n = polys.len();
            let (_, r) = polys[n - 2].divmod(&polys[n - 1])?;
            if r.is_zero() {
                break;
            }
            polys.push((-r).primitive_part());
        }
        Ok(SturmChain { polys })
    }

    pub fn polys(&self) -> &[RationalPoly] {
        &self.polys
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.polys.iter().filter_map(RationalPoly::degree).collect()
    }

    /// Squarefree inputs end in a nonzero constant.
    pub fn is_squarefree(&self) -> bool {
        self.polys.last().and_then(RationalPoly::degree) == Some(0)
    }

    pub fn signs_at(&self, x: &Rational) -> Vec<i8> {
        self.polys.iter().map(|p| p.sign_at(x)).collect()
    }

    pub fn sign_variations(&self, x: &Rational) -> usize {
        sign_variations(self, x)
    }
}

/// Sign changes along the chain evaluated at `x`, zeros dropped.
pub fn sign_variations(chain: &SturmChain, x: &Rational) -> usize {
    let signs: Vec<i8> = chain.signs_at(x).into_iter().filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Endpoint offset used when `p` vanishes at `lo` or `hi`.
pub fn endpoint_epsilon() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub count: usize,
    pub v_lo: usize,
    pub v_hi: usize,
    /// Endpoints actually used, as `p/q` strings.
    pub lo: String,
    pub hi: String,
    /// Set when the polynomial vanished at the endpoint and it was moved
    /// inward by [`endpoint_epsilon`].
    pub lo_perturbed: bool,
    pub hi_perturbed: bool,
    pub degrees: Vec<usize>,
}

/// Number of distinct real roots of `p` in `(lo, hi)`, as `V(lo) − V(hi)`.
pub fn count_roots_in_interval(p: &RationalPoly, lo: &Rational, hi: &Rational) -> Result<RootCount> {
    if lo >= hi {
        return Err(Error::InvalidParameter(format!("empty interval ({lo}, {hi})")));
    }
    let chain = SturmChain::new(p)?;
    let eps = endpoint_epsilon();
    let lo_perturbed = p.eval(lo).is_zero();
    let hi_perturbed = p.eval(hi).is_zero();
    let lo = if lo_perturbed { lo + &eps } else { lo.clone() };
    let hi = if hi_perturbed { hi - &eps } else { hi.clone() };
    let v_lo = chain.sign_variations(&lo);
    let v_hi = chain.sign_variations(&hi);
    Ok(RootCount {
        count: v_lo.saturating_sub(v_hi),
        v_lo,
        v_hi,
        lo: lo.to_string(),
        hi: hi.to_string(),
        lo_perturbed,
        hi_perturbed,
        degrees: chain.degrees(),
    })
}

/// `H(γ, ·)` with exact coefficients, ascending in `M`.
pub fn h_poly_exact(gamma: &Rational) -> RationalPoly {
    let g = gamma;
    let p = |c: [i64; 5]| -> Rational {
        // c[k] multiplies γᵏ
        c.iter().rev().fold(Rational::zero(), |acc, &ck| acc * g + ri(ck))
    };
    RationalPoly::new(vec![
        p([36, 84, 53, 26, 57]),
        p([-72, -72, -50, -20, -42]),
        p([36, -24, 39, 26, -13]),
        p([0, 24, -44, 0, 20]),
        p([0, -12, 19, -2, -5]),
        p([0, 0, -2, 4, -2]),
        p([0, 0, 1, -2, 1]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(q("7/5"), Rational::new(7.into(), 5.into()));
        assert_eq!(q("14/10"), q("7/5"));
        assert_eq!(q("1.4"), q("7/5"));
        assert_eq!(q("-0.25"), q("-1/4"));
        assert_eq!(q("2"), ri(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn divmod_examples() {
        let (qq, r) = RationalPoly::from_i64(&[-1, 0, 1]).divmod(&RationalPoly::from_i64(&[-1, 1])).unwrap();
        assert_eq!(qq, RationalPoly::from_i64(&[1, 1]));
        assert!(r.is_zero());
        let (qq, r) = RationalPoly::from_i64(&[0, 0, 0, 1]).divmod(&RationalPoly::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(qq, RationalPoly::x());
        assert_eq!(r, RationalPoly::from_i64(&[0, -1]));
        assert!(matches!(RationalPoly::x().divmod(&RationalPoly::zero()), Err(Error::ZeroDivisor)));
    }

    #[test]
    fn quarter_chain() {
        let p = RationalPoly::new(vec![q("-1/4"), ri(0), ri(1)]);
        let chain = SturmChain::new(&p).unwrap();
        assert_eq!(chain.degrees(), vec![2, 1, 0]);
        assert_eq!(chain.signs_at(&ri(-1)), vec![1, -1, 1]);
        assert_eq!(chain.sign_variations(&ri(-1)), 2);
        assert_eq!(chain.sign_variations(&ri(1)), 0);
        assert_eq!(count_roots_in_interval(&p, &ri(-1), &ri(1)).unwrap().count, 2);
    }

    #[test]
    fn no_roots_inside() {
        let p = RationalPoly::from_roots(&[ri(2), ri(3)]);
        assert_eq!(count_roots_in_interval(&p, &ri(-1), &ri(1)).unwrap().count, 0);
    }

    #[test]
    fn endpoint_root_is_perturbed() {
        let p = RationalPoly::from_roots(&[ri(-1), q("1/2")]);
        let rc = count_roots_in_interval(&p, &ri(-1), &ri(1)).unwrap();
        assert!(rc.lo_perturbed && !rc.hi_perturbed);
        assert_eq!(rc.count, 1);
    }

    #[test]
    fn repeated_roots_counted_once() {
        let p = RationalPoly::from_roots(&[q("1/3"), q("1/3"), q("-1/2")]);
        let chain = SturmChain::new(&p).unwrap();
        assert!(!chain.is_squarefree());
        assert_eq!(count_roots_in_interval(&p, &ri(-1), &ri(1)).unwrap().count, 2);
    }

    #[test]
    fn primitive_part_keeps_sign() {
        let p = RationalPoly::new(vec![q("-2/3"), q("4/9")]);
        assert_eq!(p.primitive_part(), RationalPoly::from_i64(&[-3, 2]));
        let p = RationalPoly::new(vec![q("2/3"), q("-4/9")]);
        assert_eq!(p.primitive_part(), RationalPoly::from_i64(&[3, -2]));
    }

    #[test]
    fn h_at_gamma_one() {
        let h = h_poly_exact(&ri(1));
        assert_eq!(h.coeffs()[0], ri(256));
        // H(1, M) = 64(M − 2)²
        assert_eq!(h, RationalPoly::from_i64(&[256, -256, 64]));
        assert_eq!(h.eval(&ri(1)), ri(64));
        assert_eq!(h.eval(&ri(-1)), ri(576));
    }

    #[test]
    fn h_chain_at_two() {
        let h = h_poly_exact(&ri(2));
        let rc = count_roots_in_interval(&h, &ri(-1), &ri(1)).unwrap();
        assert_eq!(rc.degrees, vec![6, 5, 4, 3, 2, 1, 0]);
        assert_eq!((rc.count, rc.v_lo, rc.v_hi), (0, 3, 3));
    }

    #[test]
    fn h_matches_float() {
        let h = h_poly_exact(&q("7/5"));
        let exact = h.eval(&q("1/2")).to_f64().unwrap();
        let float = crate::spectral::h_vanleer(1.4, 0.5);
        assert!((exact - float).abs() <= 1e-12 * exact.abs());
    }

    #[test]
    fn display() {
        assert_eq!(RationalPoly::new(vec![q("-1/4"), ri(0), ri(1)]).to_string(), "M^2 - 1/4");
        assert_eq!(RationalPoly::from_i64(&[0, -3, 2]).to_string(), "2*M^2 - 3*M");
        assert_eq!(RationalPoly::zero().to_string(), "0");
    }
}
