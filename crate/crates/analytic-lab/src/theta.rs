use std::f64::consts::PI;

use num_complex::Complex64;

use crate::LabError;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A point τ of the upper half plane with nome q = e^{2πiτ}. The truncation
/// order N is the least integer with |q|^N ≤ 1e-30.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusModulus {
    tau: Complex64,
    order: usize,
}

/// ½ log|1 − x|², accurate for small x.
fn log_abs_one_minus(x: Complex64) -> f64 {
    0.5 * (-2.0 * x.re + x.norm_sqr()).ln_1p()
}

/// log|1 − e^v|, accurate both for small e^v and for v near 0.
fn log_abs_one_minus_exp(v: Complex64) -> f64 {
    if v.norm() < 0.5 {
        // e^v − 1 = expm1(a) cos b − 2 sin²(b/2) + i e^a sin b
        let (a, b) = (v.re, v.im);
        let re = a.exp_m1() * b.cos() - 2.0 * (b / 2.0).sin().powi(2);
        let im = a.exp() * b.sin();
        return Complex64::new(re, im).norm().ln();
    }
    log_abs_one_minus(v.exp())
}

impl TorusModulus {
    pub fn new(tau: Complex64) -> Result<Self, LabError> {
        if !(tau.im > 0.0 && tau.is_finite()) {
            return Err(LabError::UpperHalfPlane(tau.im));
        }
        let order = (30.0 * 10f64.ln() / (2.0 * PI * tau.im)).ceil().max(1.0) as usize;
        Ok(TorusModulus { tau, order })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Im τ, the area of the period parallelogram of Z + τZ.
    pub fn area(&self) -> f64 {
        self.tau.im
    }

    /// θ₁(z) = 2 Σ_{n≥0} (−1)ⁿ q^{(n+½)²/2} sin((2n+1)πz). At least the terms
    /// with (n+½)²/2 < N are summed; more are taken while the growth of sin
    /// off the real axis keeps them above rounding, up to a fixed budget.
    pub fn theta1(&self, z: Complex64) -> Result<Complex64, LabError> {
        let budget = 64 + 4 * (2.0 * self.order as f64).sqrt() as usize + (4.0 * z.im.abs() / self.tau.im) as usize;
        let bound = |k: f64| 2.0 * (-PI * self.tau.im * k * k + 2.0 * k * PI * z.im.abs()).exp();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        let mut n = 0usize;
        loop {
            let k = n as f64 + 0.5;
            if k * k / 2.0 >= self.order as f64 && bound(k) <= 1e-17 * scale {
                return Ok(sum);
            }
            if n >= budget {
                return Err(LabError::Truncation { terms: n });
            }
            let t = 2.0 * (I * PI * self.tau * k * k).exp() * ((2.0 * k) * PI * z).sin();
            sum += if n.is_multiple_of(2) { t } else { -t };
            scale += t.norm();
            n += 1;
        }
    }

    /// Writes u = u₁ + nτ with Im u₁ ∈ [0, Im τ) and returns (u₁, n).
    pub(crate) fn reduce(&self, u: Complex64) -> (Complex64, f64) {
        let n = (u.im / self.tau.im).floor();
        let mut u1 = u - self.tau * n;
        // rounding can leave Im u₁ a hair outside the strip
        if u1.im >= self.tau.im {
            u1 -= self.tau;
            return (u1 - u1.re.floor(), n + 1.0);
        }
        if u1.im < 0.0 {
            u1 += self.tau;
            return (u1 - u1.re.floor(), n - 1.0);
        }
        (u1 - u1.re.floor(), n)
    }

    /// log|θ₁(u)| for u already in the strip 0 ≤ Im u < Im τ, from
    /// θ₁ = 2q^{1/8} sin πu Π (1 − qⁿ)(1 − qⁿw)(1 − qⁿ/w), w = e^{2πiu}.
    pub(crate) fn log_abs_theta1_strip(&self, u: Complex64) -> Result<f64, LabError> {
        let t = self.tau.im;
        let near = log_abs_one_minus_exp(2.0 * PI * I * u);
        if !near.is_finite() {
            return Err(LabError::Coincident);
        }
        let mut s = -PI * t / 4.0 + PI * u.im + near;
        let mut n = 1usize;
        loop {
            let nf = n as f64;
            // |qⁿ/w| = e^{−2π(n Im τ − Im u)} dominates the three factors
            if (-2.0 * PI * (nf * t - u.im)).exp() < 1e-18 {
                break;
            }
            if n > 1_000_000 {
                return Err(LabError::Truncation { terms: n });
            }
            s += log_abs_one_minus((2.0 * PI * I * self.tau * nf).exp())
                + log_abs_one_minus_exp(2.0 * PI * I * (self.tau * nf + u))
                + log_abs_one_minus_exp(2.0 * PI * I * (self.tau * nf - u));
            n += 1;
        }
        Ok(s)
    }

    /// log|θ₁(u)| through the product formula and quasi-periodicity; finite
    /// for every u off the lattice.
    pub fn log_abs_theta1(&self, u: Complex64) -> Result<f64, LabError> {
        let (u1, n) = self.reduce(u);
        Ok(self.log_abs_theta1_strip(u1)? + PI * n * n * self.tau.im + 2.0 * PI * n * u1.im)
    }

    /// log|η(τ)| with η = q^{1/24} Π (1 − qⁿ).
    pub fn log_abs_eta(&self) -> f64 {
        let t = self.tau.im;
        let mut s = -PI * t / 12.0;
        let mut n = 1.0;
        while (-2.0 * PI * n * t).exp() >= 1e-18 {
            s += log_abs_one_minus((2.0 * PI * I * self.tau * n).exp());
            n += 1.0;
        }
        s
    }

    /// log|θ₁′(0)| from the series leading coefficient:
    /// θ₁′(0) = 2π q^{1/8} Σ (−1)ⁿ (2n+1) q^{n(n+1)/2}.
    pub fn log_abs_theta1_prime0(&self) -> f64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut n = 0usize;
        loop {
            let nf = n as f64;
            let mag = (2.0 * nf + 1.0) * (-PI * self.tau.im * nf * (nf + 1.0)).exp();
            if n > 0 && mag < 1e-18 {
                break;
            }
            let t = (2.0 * nf + 1.0) * (I * PI * self.tau * nf * (nf + 1.0)).exp();
            sum += if n.is_multiple_of(2) { t } else { -t };
            n += 1;
        }
        (2.0 * PI).ln() - PI * self.tau.im / 4.0 + sum.norm().ln()
    }
}
