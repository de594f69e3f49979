//! Characteristic function of the area from the Hofstadter-Harper operator
//! `H1 + H2(φ, ν)` on the columns of the lattice:
//!
//! ```text
//! (H1)_{ik} = δ_{i,k+1} + δ_{i,k−1},   (H2)_{ik} = 2 cos(φ i + ν) δ_{ik}
//! Σ_{γ ∈ Γ(n1,n2)} e^{iφ Area(γ)} = ∫ dν/2π [(H1 + H2)^{2n1, 2n2}]_{00}
//! ```
//!
//! where `(·)^{2n1,2n2}` keeps the terms of `(H1 + H2)^{2(n1+n2)}` with exactly
//! `2n1` factors of `H1`. That mixed power is extracted by tagging amplitudes
//! with how many of each operator they have absorbed.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::walk::{enumerate_dp, StepCounts, DEFAULT_STATE_BUDGET};
use crate::{Error, Real, Result};

/// Longest walk [`check_identity`] accepts; beyond this the double precision
/// dynamic range of the amplitudes becomes the limiting factor.
pub const MAX_CHECK_LENGTH: u32 = 16;

/// Flux per plaquette and wavenumber along direction 2, both reduced to
/// `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxParams<F> {
    pub phi: F,
    pub nu: F,
}

impl<F: Real> FluxParams<F> {
    pub fn new(phi: F, nu: F) -> Result<Self> {
        if !phi.is_finite() || !nu.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "flux parameters must be finite, got phi={phi:?}, nu={nu:?}"
            )));
        }
        Ok(Self {
            phi: canonical_angle(phi),
            nu: canonical_angle(nu),
        })
    }
}

fn canonical_angle<F: Real>(a: F) -> F {
    let two_pi = F::TAU();
    let r = a % two_pi;
    let r = if r < F::zero() { r + two_pi } else { r };
    if r >= two_pi {
        F::zero()
    } else {
        r
    }
}

/// Power-tagged amplitudes `(column x, #H1 applied, #H2 applied) ↦ a`.
///
/// Amplitudes that can no longer come back to the read-out column with the
/// remaining `H1` budget are dropped as they are produced, so the support
/// stays within `n1` columns of it.
#[derive(Debug, Clone)]
pub struct MixedPowerState<F> {
    /// columns stored are `-half_width ..= half_width`
    half_width: i64,
    base_column: i64,
    max_p1: usize,
    max_p2: usize,
    data: Vec<Complex<F>>,
}

impl<F: Real> MixedPowerState<F> {
    /// Unit amplitude at `(base_column, 0, 0)`, targeting the `(2n1, 2n2)`
    /// mixed power. The truncation must leave a free column beyond reach:
    /// `half_width ≥ |base_column| + n1 + 1`.
    pub fn unit(n1: u32, n2: u32, base_column: i64, half_width: i64) -> Result<Self> {
        let needed = base_column.abs() + n1 as i64 + 1;
        if half_width < needed {
            return Err(Error::SizeLimit {
                what: "required column truncation |c| + n1 + 1",
                value: needed as u128,
                limit: half_width.max(0) as u128,
            });
        }
        let mut state = Self {
            half_width,
            base_column,
            max_p1: 2 * n1 as usize,
            max_p2: 2 * n2 as usize,
            data: Vec::new(),
        };
        state.data = vec![Complex::new(F::zero(), F::zero()); state.len()];
        let i = state.index(base_column, 0, 0);
        state.data[i] = Complex::new(F::one(), F::zero());
        Ok(state)
    }

    fn len(&self) -> usize {
        (2 * self.half_width as usize + 1) * (self.max_p1 + 1) * (self.max_p2 + 1)
    }

    fn index(&self, x: i64, p1: usize, p2: usize) -> usize {
        let col = (x + self.half_width) as usize;
        (col * (self.max_p1 + 1) + p1) * (self.max_p2 + 1) + p2
    }

    fn empty_like(&self) -> Self {
        Self {
            data: vec![Complex::new(F::zero(), F::zero()); self.data.len()],
            ..self.clone()
        }
    }

    pub fn amplitude(&self, x: i64, p1: usize, p2: usize) -> Complex<F> {
        if x.abs() > self.half_width || p1 > self.max_p1 || p2 > self.max_p2 {
            return Complex::new(F::zero(), F::zero());
        }
        self.data[self.index(x, p1, p2)]
    }

    /// Non-zero entries as `(x, p1, p2, amplitude)`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, usize, usize, Complex<F>)> + '_ {
        let w = self.half_width;
        (-w..=w).flat_map(move |x| {
            (0..=self.max_p1).flat_map(move |p1| {
                (0..=self.max_p2).filter_map(move |p2| {
                    let a = self.amplitude(x, p1, p2);
                    (a != Complex::new(F::zero(), F::zero())).then_some((x, p1, p2, a))
                })
            })
        })
    }

    fn add_h1_into(&self, out: &mut Self) -> Result<()> {
        for (x, p1, p2, a) in self.entries() {
            if p1 == self.max_p1 {
                continue;
            }
            let left = (self.max_p1 - p1 - 1) as i64;
            for nx in [x - 1, x + 1] {
                if (nx - self.base_column).abs() > left {
                    continue;
                }
                if nx.abs() > self.half_width {
                    return Err(Error::SizeLimit {
                        what: "column reached by H1",
                        value: nx.unsigned_abs() as u128,
                        limit: self.half_width as u128,
                    });
                }
                let i = out.index(nx, p1 + 1, p2);
                out.data[i] = out.data[i] + a;
            }
        }
        Ok(())
    }

    fn add_h2_into(&self, fp: &FluxParams<F>, out: &mut Self) {
        let two = F::one() + F::one();
        for (x, p1, p2, a) in self.entries() {
            if p2 == self.max_p2 {
                continue;
            }
            let w = two * (fp.phi * F::from_i64(x).unwrap() + fp.nu).cos();
            let i = out.index(x, p1, p2 + 1);
            out.data[i] = out.data[i] + a * w;
        }
    }

    /// One application of `H1`: `(x, p1, p2) → (x ± 1, p1 + 1, p2)`.
    pub fn apply_h1(&self) -> Result<Self> {
        let mut out = self.empty_like();
        self.add_h1_into(&mut out)?;
        Ok(out)
    }

    /// One application of `H2`: `(x, p1, p2) → 2cos(φx + ν) · (x, p1, p2 + 1)`.
    pub fn apply_h2(&self, fp: &FluxParams<F>) -> Self {
        let mut out = self.empty_like();
        self.add_h2_into(fp, &mut out);
        out
    }

    /// One application of `H1 + H2`, keeping the power tags apart.
    pub fn apply_sum(&self, fp: &FluxParams<F>) -> Result<Self> {
        let mut out = self.empty_like();
        self.add_h1_into(&mut out)?;
        self.add_h2_into(fp, &mut out);
        Ok(out)
    }

    fn boundary_is_zero(&self) -> bool {
        let zero = Complex::new(F::zero(), F::zero());
        [-self.half_width, self.half_width].iter().all(|&x| {
            (0..=self.max_p1)
                .all(|p1| (0..=self.max_p2).all(|p2| self.amplitude(x, p1, p2) == zero))
        })
    }
}

/// `[(H1 + H2)^{2n1, 2n2}]_{cc}` read at column `base_column`.
pub fn mixed_power_diag_at<F: Real>(
    n1: u32,
    n2: u32,
    fp: &FluxParams<F>,
    base_column: i64,
) -> Result<Complex<F>> {
    let half_width = base_column.abs() + n1 as i64 + 1;
    let mut state = MixedPowerState::unit(n1, n2, base_column, half_width)?;
    for _ in 0..2 * (n1 + n2) {
        state = state.apply_sum(fp)?;
        if !state.boundary_is_zero() {
            return Err(Error::Invariant(
                "mixed power reached the truncation boundary".into(),
            ));
        }
    }
    Ok(state.amplitude(base_column, 2 * n1 as usize, 2 * n2 as usize))
}

/// `[(H1 + H2)^{2n1, 2n2}]_{00}`.
pub fn mixed_power_diag<F: Real>(n1: u32, n2: u32, fp: &FluxParams<F>) -> Result<Complex<F>> {
    mixed_power_diag_at(n1, n2, fp, 0)
}

/// Default number of uniform `ν` nodes: `2(n1+n2) + 2`, above the `2n2 + 1`
/// needed for exactness.
pub fn default_nu_points(n1: u32, n2: u32) -> usize {
    2 * (n1 + n2) as usize + 2
}

/// `∫_0^{2π} dν/2π [(H1 + H2)^{2n1,2n2}]_{cc}` on `points` uniform nodes.
///
/// The integrand is a trigonometric polynomial of degree ≤ 2n2 in ν, so any
/// `points ≥ 2n2 + 1` gives the integral exactly up to rounding.
pub fn nu_integral_with<F: Real>(
    n1: u32,
    n2: u32,
    phi: F,
    points: usize,
    base_column: i64,
) -> Result<Complex<F>> {
    if points < 2 * n2 as usize + 1 {
        return Err(Error::InvalidArgument(format!(
            "{points} quadrature nodes cannot integrate degree {} exactly",
            2 * n2
        )));
    }
    let n = F::from_usize(points).unwrap();
    let values: Vec<Complex<F>> = (0..points)
        .into_par_iter()
        .map(|j| {
            let nu = F::TAU() * F::from_usize(j).unwrap() / n;
            let fp = FluxParams::new(phi, nu)?;
            mixed_power_diag_at(n1, n2, &fp, base_column)
        })
        .collect::<Result<_>>()?;
    let sum = values
        .into_iter()
        .fold(Complex::new(F::zero(), F::zero()), |acc, v| acc + v);
    Ok(sum / n)
}

/// [`nu_integral_with`] at column 0 with [`default_nu_points`].
pub fn nu_integral<F: Real>(n1: u32, n2: u32, phi: F) -> Result<Complex<F>> {
    nu_integral_with(n1, n2, phi, default_nu_points(n1, n2), 0)
}

/// One `φ` sample of the operator/oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HhSample {
    pub n1: u32,
    pub n2: u32,
    pub phi: f64,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HhReport {
    pub samples: Vec<HhSample>,
}

impl HhReport {
    pub fn pass(&self) -> bool {
        self.samples.iter().all(|s| s.pass)
    }
}

/// Options for [`check_identity`].
#[derive(Debug, Clone, Copy)]
pub struct HhOptions {
    /// Relative tolerance, scaled by the number of walks.
    pub tolerance: f64,
    /// Extra ν nodes beyond `2(n1+n2) + 2`.
    pub quadrature_margin: usize,
    pub state_budget: u64,
}

impl Default for HhOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            quadrature_margin: 0,
            state_budget: DEFAULT_STATE_BUDGET,
        }
    }
}

/// Compares the ν-integrated mixed power (lhs) with the exact oracle's
/// characteristic function (rhs) at every `φ` sample. A sample passes when
/// `|lhs − rhs| ≤ tolerance · |Γ(n1, n2)|`.
pub fn check_identity(n1: u32, n2: u32, phi_samples: &[f64], opts: &HhOptions) -> Result<HhReport> {
    let sc = StepCounts::new(n1, n2);
    if sc.length() > MAX_CHECK_LENGTH {
        return Err(Error::SizeLimit {
            what: "walk length 2(n1+n2) for the operator check",
            value: sc.length() as u128,
            limit: MAX_CHECK_LENGTH as u128,
        });
    }
    if opts.tolerance.is_nan() || opts.tolerance <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let dist = enumerate_dp(sc, opts.state_budget)?;
    let cardinal = big_to_f64(&dist.total());
    let points = default_nu_points(n1, n2) + opts.quadrature_margin;
    let samples = phi_samples
        .iter()
        .map(|&phi| {
            let lhs = nu_integral_with(n1, n2, phi, points, 0)?;
            let rhs = dist.char_function(phi);
            let residual = (lhs - rhs).norm();
            Ok(HhSample {
                n1,
                n2,
                phi,
                lhs_re: lhs.re,
                lhs_im: lhs.im,
                rhs_re: rhs.re,
                rhs_im: rhs.im,
                residual,
                pass: residual <= opts.tolerance * cardinal,
            })
        })
        .collect::<Result<_>>()?;
    Ok(HhReport { samples })
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}
