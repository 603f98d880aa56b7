//! NOMA power split for a fixed pair of layers.
//!
//! With both target sets fixed, throughput only depends on the weakest
//! receiver of each layer (its noise-to-gain ratio is the [`Bottleneck`]).
//! The minimum-rate constraints carve an interval `[low, up]` for the near
//! layer power, and the 1-D objective [`phi`] is maximised over it by a
//! projected fixed-point iteration on its stationarity condition.

use crate::channel::Topology;
use crate::error::{contract, Error, Result};
use crate::scalar::{count, Scalar};

/// Default IFE stopping tolerance, relative to `p_max`.
pub const IFE_TOL: f64 = 1e-9;
/// Default IFE iteration cap.
pub const IFE_MAX_ITER: usize = 1000;

/// Sizes of the far and near target sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerSizes {
    pub far: usize,
    pub near: usize,
}

/// Noise-to-gain ratios of the weakest targeted receiver of each layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bottleneck<T> {
    pub inv_snr_far: T,
    pub inv_snr_near: T,
}

/// Feasible interval of the near-layer power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBounds<T> {
    pub low: T,
    pub up: T,
}

impl<T: Scalar> PowerBounds<T> {
    pub fn is_feasible(&self) -> bool {
        self.low <= self.up
    }

    pub fn clamp(&self, p: T) -> T {
        p.max(self.low).min(self.up)
    }
}

fn weakest<T: Scalar>(ids: &[usize], topology: &Topology<T>, what: &str) -> Result<T> {
    ids.iter()
        .map(|&m| {
            topology
                .receivers
                .get(m)
                .map(|r| r.inv_snr())
                .ok_or_else(|| contract(format!("{what} target {m} is not a receiver")))
        })
        .try_fold(None, |acc: Option<T>, x| {
            let x = x?;
            Ok::<_, Error>(Some(acc.map_or(x, |a| a.max(x))))
        })?
        .ok_or_else(|| contract(format!("{what} target set is empty")))
}

/// Largest noise-to-gain ratio within each target set.
pub fn bottlenecks<T: Scalar>(
    targets_far: &[usize],
    targets_near: &[usize],
    topology: &Topology<T>,
) -> Result<Bottleneck<T>> {
    Ok(Bottleneck {
        inv_snr_far: weakest(targets_far, topology, "far")?,
        inv_snr_near: weakest(targets_near, topology, "near")?,
    })
}

/// Whether some split meets `r_min` on both layers within `p_max`:
/// `p_max >= b_f (2^r - 1) + b_n 2^r (2^r - 1)`.
pub fn feasibility<T: Scalar>(b: &Bottleneck<T>, r_min: T, p_max: T) -> bool {
    let two_r = r_min.exp2();
    let needed = b.inv_snr_far * (two_r - T::one()) + b.inv_snr_near * two_r * (two_r - T::one());
    p_max >= needed
}

/// `low = b_n (2^r - 1)`, `up = p_max 2^-r - b_f (1 - 2^-r)`.
pub fn bounds<T: Scalar>(b: &Bottleneck<T>, r_min: T, p_max: T) -> PowerBounds<T> {
    let inv = (-r_min).exp2();
    PowerBounds {
        low: b.inv_snr_near * (r_min.exp2() - T::one()),
        up: p_max * inv - b.inv_snr_far * (T::one() - inv),
    }
}

/// Two-layer throughput as a function of the near-layer power, bottleneck
/// receivers only:
/// `F log2(1 + (p_max - p) / (p + b_f)) + N log2(1 + p / b_n)`.
pub fn phi<T: Scalar>(p_near: T, sizes: LayerSizes, b: &Bottleneck<T>, p_max: T) -> T {
    let far = ((p_max - p_near) / (p_near + b.inv_snr_far)).ln_1p();
    let near = (p_near / b.inv_snr_near).ln_1p();
    (count::<T>(sizes.far) * far + count::<T>(sizes.near) * near) / T::LN_2()
}

/// Analytic derivative of [`phi`].
///
/// In SINR form the far term is `-F (1 + S_f) / (p_max + b_f)` and the near term
/// `N S_n / ((1 + S_n) p)`; both simplify to the expressions used here.
pub fn phi_derivative<T: Scalar>(p_near: T, sizes: LayerSizes, b: &Bottleneck<T>) -> T {
    let far = count::<T>(sizes.far) / (p_near + b.inv_snr_far);
    let near = count::<T>(sizes.near) / (p_near + b.inv_snr_near);
    (near - far) / T::LN_2()
}

/// One evaluation of the fixed-point map obtained by solving `phi' = 0` for the
/// `p` in the near term's `1/p` factor:
/// `p <- N S_n/(1+S_n) / (F (1+S_f)/(p_max + b_f))`, i.e. `(N/F) p (p + b_f) / (p + b_n)`.
pub fn ife_map<T: Scalar>(p_near: T, sizes: LayerSizes, b: &Bottleneck<T>) -> T {
    let ratio = count::<T>(sizes.near) / count::<T>(sizes.far);
    ratio * p_near * (p_near + b.inv_snr_far) / (p_near + b.inv_snr_near)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IfeOptions<T> {
    /// Stop once successive iterates differ by at most `tol * p_max`.
    pub tol: T,
    pub max_iter: usize,
    /// Starting point; defaults to the interval midpoint.
    pub init: Option<T>,
}

impl<T: Scalar> Default for IfeOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(IFE_TOL),
            max_iter: IFE_MAX_ITER,
            init: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IfeOutcome<T> {
    /// Best of {last iterate, low, up} under [`phi`].
    pub p_near: T,
    /// Last iterate of the projected fixed-point iteration.
    pub fixed_point: T,
    pub iterations: usize,
    pub converged: bool,
    /// Every iterate, starting with the initial point.
    pub trace: Vec<T>,
}

/// Maximises [`phi`] over `bnds` by projected fixed-point iteration of
/// [`ife_map`], then compares the result against both interval ends.
pub fn ife_optimize<T: Scalar>(
    sizes: LayerSizes,
    b: &Bottleneck<T>,
    bnds: &PowerBounds<T>,
    p_max: T,
    opts: &IfeOptions<T>,
) -> Result<IfeOutcome<T>> {
    if !bnds.is_feasible() {
        return Err(contract(format!(
            "infeasible power interval [{}, {}]",
            bnds.low, bnds.up
        )));
    }
    let init = opts.init.unwrap_or((bnds.low + bnds.up) / T::lit(2.0));
    if init < bnds.low || init > bnds.up {
        return Err(contract(format!(
            "initial power {init} outside [{}, {}]",
            bnds.low, bnds.up
        )));
    }

    // One-sided layers make phi monotone.
    if sizes.near == 0 || sizes.far == 0 {
        let p = if sizes.near == 0 { bnds.low } else { bnds.up };
        return Ok(IfeOutcome {
            p_near: p,
            fixed_point: p,
            iterations: 0,
            converged: true,
            trace: vec![p],
        });
    }

    let step_tol = opts.tol * p_max;
    let mut trace = vec![init];
    let mut p = init;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        let next = bnds.clamp(ife_map(p, sizes, b));
        iterations += 1;
        trace.push(next);
        let delta = (next - p).abs();
        p = next;
        if delta <= step_tol {
            converged = true;
            break;
        }
    }

    let value = |x: T| phi(x, sizes, b, p_max);
    let mut best = (p, value(p));
    for edge in [bnds.low, bnds.up] {
        let v = value(edge);
        if v > best.1 {
            best = (edge, v);
        }
    }
    Ok(IfeOutcome {
        p_near: best.0,
        fixed_point: p,
        iterations,
        converged,
        trace,
    })
}

/// Brute-force maximiser of [`phi`] on `steps + 1` evenly spaced points of
/// `[low, up]` (both ends included). First maximum wins.
pub fn grid_oracle<T: Scalar>(
    sizes: LayerSizes,
    b: &Bottleneck<T>,
    bnds: &PowerBounds<T>,
    p_max: T,
    steps: usize,
) -> Result<T> {
    if !bnds.is_feasible() {
        return Err(contract("infeasible power interval"));
    }
    let steps = steps.max(1);
    let width = bnds.up - bnds.low;
    let mut best = (bnds.low, phi(bnds.low, sizes, b, p_max));
    for i in 1..=steps {
        let p = if i == steps {
            bnds.up
        } else {
            bnds.low + width * count::<T>(i) / count::<T>(steps)
        };
        let v = phi(p, sizes, b, p_max);
        if v > best.1 {
            best = (p, v);
        }
    }
    Ok(best.0)
}
