//! Polynomials of degree at most three and their nonzero roots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FieldKind, FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Largest prime modulus for which roots are found by exhaustive evaluation.
pub const PRIME_ROOT_SCAN_LIMIT: u64 = 1 << 26;

/// `c3·λ³ + c2·λ² + c1·λ + c0` over a single field. Leading coefficients
/// may vanish, in which case the polynomial has lower degree.
#[derive(Debug, Clone, PartialEq)]
pub struct LowDegreePoly {
    // constant term first
    coeffs: [Scalar; 4],
}

/// Output of the floating-point root scan over the approximate reals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealRootScan {
    /// Accepted nonzero roots with their residual `|p(λ)|`, ascending.
    pub roots: Vec<(f64, f64)>,
    /// Points whose residual lies in `(tol·scale, 10·tol·scale]`: too large to
    /// accept, too small to ignore silently.
    pub near_misses: Vec<(f64, f64)>,
    /// Largest coefficient magnitude; residuals are compared against `tol·scale`.
    pub scale: f64,
}

impl LowDegreePoly {
    pub fn new(c3: Scalar, c2: Scalar, c1: Scalar, c0: Scalar) -> Result<Self> {
        let spec = c3.spec();
        if [&c2, &c1, &c0].iter().any(|c| c.spec() != spec) {
            return Err(Error::MixedFieldSpecs);
        }
        Ok(LowDegreePoly {
            coeffs: [c0, c1, c2, c3],
        })
    }

    pub fn spec(&self) -> FieldSpec {
        self.coeffs[0].spec()
    }

    /// Coefficients in the order `(c3, c2, c1, c0)`.
    pub fn coefficients(&self) -> [&Scalar; 4] {
        [
            &self.coeffs[3],
            &self.coeffs[2],
            &self.coeffs[1],
            &self.coeffs[0],
        ]
    }

    pub fn is_identically_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.spec()), |acc, c| &(&acc * x) + c)
    }

    /// All nonzero roots in the field, deduplicated and in canonical order.
    ///
    /// Over Q the rational root theorem is applied to the primitive integer
    /// polynomial; over `F_p` every nonzero residue is tried; over the reals
    /// see [`LowDegreePoly::real_root_scan`].
    pub fn nonzero_roots(&self) -> Result<Vec<Scalar>> {
        if self.is_identically_zero() {
            return Err(Error::IdenticallyZeroPolynomial);
        }
        let spec = self.spec();
        let mut roots = match spec.kind() {
            FieldKind::Rationals => {
                let coeffs: Vec<BigRational> = self
                    .coeffs
                    .iter()
                    .map(|c| c.as_rational().expect("rational coefficient").clone())
                    .collect();
                rational_nonzero_roots(&coeffs)
                    .into_iter()
                    .map(|r| Scalar::from_rational(spec, &r))
                    .collect::<Result<Vec<_>>>()?
            }
            FieldKind::PrimeField { p } => {
                if p > PRIME_ROOT_SCAN_LIMIT {
                    return Err(Error::TooLarge {
                        needed: p as u128,
                        limit: PRIME_ROOT_SCAN_LIMIT as u128,
                    });
                }
                spec.elements()
                    .expect("prime field")
                    .skip(1)
                    .filter(|x| self.eval(x).is_zero())
                    .collect()
            }
            FieldKind::ApproxReals { .. } => self
                .real_root_scan()?
                .roots
                .into_iter()
                .map(|(x, _)| Scalar::from_f64(spec, x))
                .collect::<Result<Vec<_>>>()?,
        };
        roots.sort_by(Scalar::canonical_cmp);
        roots.dedup();
        Ok(roots)
    }

    /// Numerical real-root search for the approximate reals.
    ///
    /// The polynomial is split at its critical points into monotone pieces
    /// inside the Cauchy bound. A sign change on a piece is bisected to
    /// machine precision; a critical point with residual at most `tol·scale`
    /// is a repeated root. Candidates joined by such a critical point are
    /// merged into one root.
    pub fn real_root_scan(&self) -> Result<RealRootScan> {
        let tol = self.spec().tolerance().ok_or(Error::MixedFieldSpecs)?;
        if self.is_identically_zero() {
            return Err(Error::IdenticallyZeroPolynomial);
        }
        let full: Vec<f64> = self
            .coeffs
            .iter()
            .map(|c| c.as_f64().expect("real"))
            .collect();
        let scale = full.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let accept = tol * scale;
        let residual = |x: f64| horner(&full, x).abs();

        // drop coefficients that are zero within tolerance, then factor out λ^k
        let hi = (0..4).rev().find(|&i| full[i].abs() > tol).unwrap_or(0);
        let lo = (0..=hi).find(|&i| full[i].abs() > tol).unwrap_or(hi);
        let g: Vec<f64> = full[lo..=hi].to_vec();
        let degree = g.len() - 1;

        let mut scan = RealRootScan {
            roots: Vec::new(),
            near_misses: Vec::new(),
            scale,
        };
        if degree == 0 {
            return Ok(scan);
        }

        let g_residual = |x: f64| horner(&g, x).abs();
        let crits = critical_points(&g);
        let bound = 1.0
            + g[..degree]
                .iter()
                .map(|c| (c / g[degree]).abs())
                .fold(0.0, f64::max);
        let mut breaks = vec![-bound];
        breaks.extend(crits.iter().copied().filter(|c| c.abs() < bound));
        breaks.push(bound);

        #[derive(Clone, Copy)]
        struct Candidate {
            x: f64,
            tangent: bool,
        }
        let mut cands = Vec::new();
        let mut crossing_next_to = vec![false; breaks.len()];
        for (k, w) in breaks.windows(2).enumerate() {
            let (ga, gb) = (horner(&g, w[0]), horner(&g, w[1]));
            if ga * gb < 0.0 {
                cands.push(Candidate {
                    x: bisect(&g, w[0], w[1]),
                    tangent: false,
                });
                crossing_next_to[k] = true;
                crossing_next_to[k + 1] = true;
            }
        }
        for (k, &c) in breaks.iter().enumerate().skip(1).take(breaks.len() - 2) {
            let r = g_residual(c);
            if r <= accept {
                cands.push(Candidate {
                    x: c,
                    tangent: true,
                });
            } else if r <= 10.0 * accept && !crossing_next_to[k] {
                scan.near_misses.push((c, r));
            }
        }
        cands.sort_by(|a, b| a.x.total_cmp(&b.x));

        // neighbours are one root when |g| stays below the threshold between
        // them; on a monotone piece that is decided by the interior critical points
        let mut clusters: Vec<Vec<Candidate>> = Vec::new();
        for cand in cands {
            let joined = clusters.last().is_some_and(|cl| {
                let prev = cl.last().expect("non-empty cluster").x;
                prev == cand.x
                    || crits
                        .iter()
                        .filter(|&&c| c > prev && c < cand.x)
                        .all(|&c| g_residual(c) <= accept)
            });
            if joined {
                clusters.last_mut().expect("cluster").push(cand);
            } else {
                clusters.push(vec![cand]);
            }
        }

        for cl in clusters {
            let rep = cl
                .iter()
                .filter(|c| c.tangent)
                .min_by(|a, b| g_residual(a.x).total_cmp(&g_residual(b.x)))
                .or_else(|| cl.first())
                .expect("non-empty cluster")
                .x;
            if rep.abs() <= tol {
                continue;
            }
            let r = residual(rep);
            if r <= accept {
                scan.roots.push((rep, r));
            } else if r <= 10.0 * accept {
                scan.near_misses.push((rep, r));
            }
        }
        scan.near_misses.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(scan)
    }
}

fn horner(coeffs_low_first: &[f64], x: f64) -> f64 {
    coeffs_low_first
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c)
}

/// Real roots of the derivative, ascending. `g` has nonzero leading term.
fn critical_points(g: &[f64]) -> Vec<f64> {
    match g.len() - 1 {
        0 | 1 => Vec::new(),
        2 => vec![-g[1] / (2.0 * g[2])],
        3 => {
            let (a, b, c) = (3.0 * g[3], 2.0 * g[2], g[1]);
            let disc = b * b - 4.0 * a * c;
            if disc < 0.0 {
                Vec::new()
            } else if disc == 0.0 {
                vec![-b / (2.0 * a)]
            } else {
                let sign = if b >= 0.0 { 1.0 } else { -1.0 };
                let qv = -0.5 * (b + sign * disc.sqrt());
                let (x1, x2) = if qv == 0.0 {
                    let s = (-c / a).sqrt();
                    (-s, s)
                } else {
                    (qv / a, c / qv)
                };
                let mut v = vec![x1.min(x2), x1.max(x2)];
                v.dedup();
                v
            }
        }
        _ => unreachable!("degree at most three"),
    }
}

fn bisect(g: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = horner(g, lo);
    for _ in 0..2000 {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = horner(g, mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    if horner(g, lo).abs() <= horner(g, hi).abs() {
        lo
    } else {
        hi
    }
}

/// Nonzero rational roots of `Σ coeffs[i]·x^i` (constant term first).
fn rational_nonzero_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let Some(hi) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let lo = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero coefficient");
    let ints = primitive_integer_poly(&coeffs[lo..=hi]);
    let mut roots = match ints.len() - 1 {
        0 => Vec::new(),
        1 => vec![BigRational::new(-ints[0].clone(), ints[1].clone())],
        2 => quadratic_rational_roots(
            &BigRational::from_integer(ints[2].clone()),
            &BigRational::from_integer(ints[1].clone()),
            &BigRational::from_integer(ints[0].clone()),
        ),
        3 => cubic_rational_roots(&ints),
        _ => unreachable!("degree at most three"),
    };
    roots.retain(|r| !r.is_zero());
    roots.sort();
    roots.dedup();
    roots
}

/// Clears denominators and divides out the content.
fn primitive_integer_poly(coeffs: &[BigRational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn quadratic_rational_roots(a: &BigRational, b: &BigRational, c: &BigRational) -> Vec<BigRational> {
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    let disc = b * b - &four * a * c;
    let Some(root) = rational_sqrt(&disc) else {
        return Vec::new();
    };
    let denom = &two * a;
    vec![(-b - &root) / &denom, (-b + &root) / &denom]
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// Rational root theorem on a primitive integer cubic with nonzero constant
/// term, then deflation to a quadratic once one root is known.
fn cubic_rational_roots(ints: &[BigInt]) -> Vec<BigRational> {
    let (a0, a3) = (&ints[0], &ints[3]);
    let nums = divisors(a0);
    let dens = divisors(a3);
    let is_root = |num: &BigInt, den: &BigInt| {
        // den³·p(num/den), exact in the integers
        let mut acc = BigInt::zero();
        let mut num_pow = BigInt::one();
        let mut den_pow = den.pow(3);
        for c in ints {
            acc += c * &num_pow * &den_pow;
            num_pow *= num;
            den_pow /= den;
        }
        acc.is_zero()
    };
    for num in &nums {
        for den in &dens {
            if !num.gcd(den).is_one() {
                continue;
            }
            for signed in [num.clone(), -num.clone()] {
                if is_root(&signed, den) {
                    let r = BigRational::new(signed, den.clone());
                    // synthetic division by (x - r)
                    let c: Vec<BigRational> = ints
                        .iter()
                        .map(|v| BigRational::from_integer(v.clone()))
                        .collect();
                    let q2 = c[3].clone();
                    let q1 = &c[2] + &r * &q2;
                    let q0 = &c[1] + &r * &q1;
                    let mut roots = quadratic_rational_roots(&q2, &q1, &q0);
                    roots.push(r);
                    return roots;
                }
            }
        }
    }
    Vec::new()
}

/// Positive divisors of `|n|`, `n != 0`, by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if let Some(small) = n.to_u128() {
        let mut small_divs = Vec::new();
        let mut large_divs = Vec::new();
        let mut d: u128 = 1;
        while d * d <= small {
            if small % d == 0 {
                small_divs.push(d);
                if d * d != small {
                    large_divs.push(small / d);
                }
            }
            d += 1;
        }
        small_divs.extend(large_divs.into_iter().rev());
        return small_divs.into_iter().map(BigInt::from).collect();
    }
    let mut small_divs = Vec::new();
    let mut large_divs = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            if &d * &d != n {
                large_divs.push(&n / &d);
            }
            small_divs.push(d.clone());
        }
        d += 1;
    }
    small_divs.extend(large_divs.into_iter().rev());
    small_divs
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &Scalar, power: usize, first: bool) -> fmt::Result {
    let negative = match (c.as_rational(), c.as_f64()) {
        (Some(q), _) => q.is_negative(),
        (_, Some(v)) => v < 0.0,
        _ => false,
    };
    let magnitude = if negative { -c } else { c.clone() };
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let text = magnitude.to_string();
    let exactly_one = if c.spec().is_exact() {
        magnitude.is_one()
    } else {
        magnitude.as_f64() == Some(1.0)
    };
    let coefficient = if power > 0 && exactly_one {
        String::new()
    } else if power > 0 && (text.contains('/') || text.contains('e')) {
        format!("({text})")
    } else {
        text
    };
    match power {
        0 => write!(f, "{coefficient}"),
        1 => write!(f, "{coefficient}λ"),
        k => write!(f, "{coefficient}λ^{k}"),
    }
}

impl fmt::Display for LowDegreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for power in (0..4).rev() {
            let c = &self.coeffs[power];
            if c.is_zero() {
                continue;
            }
            write_term(f, c, power, first)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
