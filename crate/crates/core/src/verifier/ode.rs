//! Closed-form solutions of the ruling ODE system and the obstruction that
//! rules each sub-case out.
//!
//! With `k = alpha beta`, the system is `b'' + k mu b = 0`,
//! `a'' + mu a = mu b''` and `2a'b + bb' - ab' = 0`. Each case substitutes
//! the closed forms into the last equation, projects the result on the
//! case's linearly independent functions and reports the coefficients that
//! cannot vanish.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::surface::linspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchCase {
    /// `mu = 1`, `k = 1`
    A,
    /// `mu = 1`, `k > 0`, `k != 1`
    B,
    /// `mu = 1`, `k < 0`
    C,
    /// `mu = -1`, `k = 1`
    D,
    /// `mu = -1`, `k > 0`, `k != 1`
    E,
    /// `mu = -1`, `k < 0`
    F,
}

impl BranchCase {
    pub const ALL: [BranchCase; 6] = [
        BranchCase::A,
        BranchCase::B,
        BranchCase::C,
        BranchCase::D,
        BranchCase::E,
        BranchCase::F,
    ];

    pub fn of(mu: f64, k: f64) -> Result<Self> {
        if !k.is_finite() || k == 0.0 {
            return Err(GeomError::InvalidCase(format!("k = {k} must be finite and nonzero")));
        }
        let case = match (mu, k) {
            (m, k) if m == 1.0 && k == 1.0 => BranchCase::A,
            (m, k) if m == 1.0 && k > 0.0 => BranchCase::B,
            (m, _) if m == 1.0 => BranchCase::C,
            (m, k) if m == -1.0 && k == 1.0 => BranchCase::D,
            (m, k) if m == -1.0 && k > 0.0 => BranchCase::E,
            (m, _) if m == -1.0 => BranchCase::F,
            _ => return Err(GeomError::InvalidCase(format!("mu = {mu} must be +-1"))),
        };
        Ok(case)
    }

    pub fn mu(self) -> f64 {
        match self {
            BranchCase::A | BranchCase::B | BranchCase::C => 1.0,
            _ => -1.0,
        }
    }

    /// A `k` inside the case used for randomized sweeps.
    pub fn representative_k(self) -> f64 {
        match self {
            BranchCase::A | BranchCase::D => 1.0,
            BranchCase::B => 2.0,
            BranchCase::C => -2.0,
            BranchCase::E => 3.0,
            BranchCase::F => -2.0,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().trim_matches(|c| c == '(' || c == ')').to_ascii_lowercase().as_str() {
            "a" => Ok(BranchCase::A),
            "b" => Ok(BranchCase::B),
            "c" => Ok(BranchCase::C),
            "d" => Ok(BranchCase::D),
            "e" => Ok(BranchCase::E),
            "f" => Ok(BranchCase::F),
            other => Err(GeomError::InvalidCase(format!("unknown case `{other}`"))),
        }
    }
}

impl fmt::Display for BranchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            BranchCase::A => 'a',
            BranchCase::B => 'b',
            BranchCase::C => 'c',
            BranchCase::D => 'd',
            BranchCase::E => 'e',
            BranchCase::F => 'f',
        };
        write!(f, "({c})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeBranchSpec {
    pub mu: f64,
    pub k: f64,
    pub c: [f64; 4],
    pub case: BranchCase,
}

impl OdeBranchSpec {
    /// Infers the case from `(mu, k)`.
    pub fn new(mu: f64, k: f64, c: [f64; 4]) -> Result<Self> {
        let case = BranchCase::of(mu, k)?;
        Self::with_case(case, mu, k, c)
    }

    pub fn with_case(case: BranchCase, mu: f64, k: f64, c: [f64; 4]) -> Result<Self> {
        let actual = BranchCase::of(mu, k)?;
        if actual != case {
            return Err(GeomError::InvalidCase(format!(
                "(mu, k) = ({mu}, {k}) belongs to case {actual}, not {case}"
            )));
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::InvalidCase("non-finite constant".into()));
        }
        let zero = c.iter().all(|&x| x == 0.0);
        if !zero && c[0] == 0.0 && c[1] == 0.0 {
            return Err(GeomError::InvalidCase("(c1, c2) = (0, 0) makes b vanish".into()));
        }
        Ok(Self { mu, k, c, case })
    }

    fn omega(&self) -> f64 {
        self.k.abs().sqrt()
    }

    /// `b(s)`.
    pub fn b(&self, s: f64) -> f64 {
        let [c1, c2, _, _] = self.c;
        let w = self.omega();
        match self.case {
            BranchCase::A => c1 * s.cos() + c2 * s.sin(),
            BranchCase::B | BranchCase::F => c1 * (w * s).cos() + c2 * (w * s).sin(),
            BranchCase::C | BranchCase::E => c1 * (w * s).exp() + c2 * (-w * s).exp(),
            BranchCase::D => c1 * s.exp() + c2 * (-s).exp(),
        }
    }

    /// `a(s)`; `displayed` selects the displayed particular solution, which
    /// differs from the true one in case (f).
    pub fn a_with(&self, s: f64, displayed: bool) -> f64 {
        let [c1, c2, c3, c4] = self.c;
        let k = self.k;
        let b = self.b(s);
        match self.case {
            BranchCase::A => 0.5 * ((-c1 + 2.0 * c3 + c2 * s) * s.cos() + (-c1 * s + 2.0 * c4) * s.sin()),
            BranchCase::B | BranchCase::C => k / (k - 1.0) * b + c3 * s.cos() + c4 * s.sin(),
            BranchCase::D => c3 * s.exp() + c4 * (-s).exp() - 0.5 * c1 * s * s.exp() + 0.5 * c2 * s * (-s).exp(),
            BranchCase::E => c3 * s.exp() + c4 * (-s).exp() - k / (k - 1.0) * b,
            BranchCase::F => {
                let p = if displayed { k / (k - 1.0) } else { -k / (k - 1.0) };
                c3 * s.exp() + c4 * (-s).exp() + p * b
            }
        }
    }

    pub fn a(&self, s: f64) -> f64 {
        self.a_with(s, false)
    }

    /// Functions the `(ab)` residual is a combination of, with the indices
    /// of the obstructing ones.
    pub fn basis(&self) -> (Vec<(String, Basis)>, Vec<usize>) {
        let w = self.omega();
        let fns: Vec<(String, Basis)> = match self.case {
            BranchCase::A => vec![
                ("cos^2 s".into(), Basis::new(|s| s.cos().powi(2))),
                ("sin s cos s".into(), Basis::new(|s| s.sin() * s.cos())),
                ("sin^2 s".into(), Basis::new(|s| s.sin().powi(2))),
                ("s cos^2 s".into(), Basis::new(|s| s * s.cos().powi(2))),
                ("s sin s cos s".into(), Basis::new(|s| s * s.sin() * s.cos())),
                ("s sin^2 s".into(), Basis::new(|s| s * s.sin().powi(2))),
            ],
            BranchCase::B => vec![
                ("sin(2 w s)".into(), Basis::new(move |s| (2.0 * w * s).sin())),
                ("cos(2 w s)".into(), Basis::new(move |s| (2.0 * w * s).cos())),
                ("sin((w+1) s)".into(), Basis::new(move |s| ((w + 1.0) * s).sin())),
                ("cos((w+1) s)".into(), Basis::new(move |s| ((w + 1.0) * s).cos())),
                ("sin((w-1) s)".into(), Basis::new(move |s| ((w - 1.0) * s).sin())),
                ("cos((w-1) s)".into(), Basis::new(move |s| ((w - 1.0) * s).cos())),
                ("1".into(), Basis::new(|_| 1.0)),
            ],
            BranchCase::C => vec![
                ("e^(2 w s)".into(), Basis::new(move |s| (2.0 * w * s).exp())),
                ("e^(-2 w s)".into(), Basis::new(move |s| (-2.0 * w * s).exp())),
                ("e^(w s) cos s".into(), Basis::new(move |s| (w * s).exp() * s.cos())),
                ("e^(w s) sin s".into(), Basis::new(move |s| (w * s).exp() * s.sin())),
                ("e^(-w s) cos s".into(), Basis::new(move |s| (-w * s).exp() * s.cos())),
                ("e^(-w s) sin s".into(), Basis::new(move |s| (-w * s).exp() * s.sin())),
                ("1".into(), Basis::new(|_| 1.0)),
            ],
            BranchCase::D => vec![
                ("e^(2s)".into(), Basis::new(|s| (2.0 * s).exp())),
                ("s e^(2s)".into(), Basis::new(|s| s * (2.0 * s).exp())),
                ("1".into(), Basis::new(|_| 1.0)),
                ("s".into(), Basis::new(|s| s)),
                ("e^(-2s)".into(), Basis::new(|s| (-2.0 * s).exp())),
                ("s e^(-2s)".into(), Basis::new(|s| s * (-2.0 * s).exp())),
            ],
            BranchCase::E => vec![
                ("e^(2 w s)".into(), Basis::new(move |s| (2.0 * w * s).exp())),
                ("e^(-2 w s)".into(), Basis::new(move |s| (-2.0 * w * s).exp())),
                ("e^((1+w) s)".into(), Basis::new(move |s| ((1.0 + w) * s).exp())),
                ("e^((1-w) s)".into(), Basis::new(move |s| ((1.0 - w) * s).exp())),
                ("e^((w-1) s)".into(), Basis::new(move |s| ((w - 1.0) * s).exp())),
                ("e^(-(1+w) s)".into(), Basis::new(move |s| (-(1.0 + w) * s).exp())),
                ("1".into(), Basis::new(|_| 1.0)),
            ],
            BranchCase::F => vec![
                ("sin(2 w s)".into(), Basis::new(move |s| (2.0 * w * s).sin())),
                ("cos(2 w s)".into(), Basis::new(move |s| (2.0 * w * s).cos())),
                ("e^s cos(w s)".into(), Basis::new(move |s| s.exp() * (w * s).cos())),
                ("e^s sin(w s)".into(), Basis::new(move |s| s.exp() * (w * s).sin())),
                ("e^-s cos(w s)".into(), Basis::new(move |s| (-s).exp() * (w * s).cos())),
                ("e^-s sin(w s)".into(), Basis::new(move |s| (-s).exp() * (w * s).sin())),
                ("1".into(), Basis::new(|_| 1.0)),
            ],
        };
        let named = match self.case {
            BranchCase::A => vec![3],
            BranchCase::D => vec![1, 5],
            _ => vec![0, 1],
        };
        (fns, named)
    }

    /// Closed-form values of the obstructing coefficients.
    pub fn expected_obstruction(&self) -> Vec<f64> {
        let [c1, c2, _, _] = self.c;
        let k = self.k;
        let w = self.omega();
        match self.case {
            BranchCase::A => vec![-c1 * c1 - 0.5 * c2 * c2],
            BranchCase::B => {
                let f = w * (2.0 * k - 1.0) / (k - 1.0);
                vec![0.5 * f * (c2 * c2 - c1 * c1), f * c1 * c2]
            }
            BranchCase::C => {
                let f = w * (2.0 * k - 1.0) / (k - 1.0);
                vec![f * c1 * c1, -f * c2 * c2]
            }
            BranchCase::D => vec![-0.5 * c1 * c1, -0.5 * c2 * c2],
            BranchCase::E => {
                let f = w / (k - 1.0);
                vec![-f * c1 * c1, f * c2 * c2]
            }
            BranchCase::F => {
                let f = w / (k - 1.0);
                vec![0.5 * f * (c1 * c1 - c2 * c2), -f * c1 * c2]
            }
        }
    }

    /// The obstructing coefficients as displayed in the original argument.
    pub fn displayed_obstruction(&self) -> Vec<f64> {
        let [c1, c2, _, _] = self.c;
        let k = self.k;
        let w = self.omega();
        match self.case {
            BranchCase::B => vec![w * (c2 * c2 - c1 * c1), 2.0 * w * c1 * c2],
            BranchCase::F => {
                let f = w * (1.0 - 2.0 * k) / (k - 1.0);
                vec![0.5 * f * (c1 * c1 - c2 * c2), -f * c1 * c2]
            }
            _ => self.expected_obstruction(),
        }
    }
}

/// A basis function of the projection.
#[derive(Clone)]
pub struct Basis(std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl Basis {
    fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self(std::sync::Arc::new(f))
    }

    pub fn eval(&self, s: f64) -> f64 {
        (self.0)(s)
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Basis")
    }
}

/// Default sampling interval of the explorer.
pub const DEFAULT_S_GRID: (f64, f64, usize) = (-1.0, 1.0, 201);

/// Draws used by [`branch_sweep`] when none are given.
pub const DEFAULT_DRAWS: usize = 100;

/// Seed of the randomized sweeps.
pub const DEFAULT_BRANCH_SEED: u64 = 20240607;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    pub case: BranchCase,
    pub mu: f64,
    pub k: f64,
    pub c: [f64; 4],
    pub s_grid: (f64, f64, usize),
    /// `sup |2a'b + bb' - ab'|` on the grid.
    pub ab_residual_sup: f64,
    /// `sup |b'' + k mu b|`.
    pub ode1_residual_sup: f64,
    /// `sup |a'' + mu a - mu b''|`.
    pub amub_residual_sup: f64,
    /// Same, for the displayed particular solution of `a`.
    pub amub_residual_sup_displayed: f64,
    pub basis: Vec<String>,
    pub coefficients: Vec<f64>,
    /// Largest misfit of the projection, relative to the residual.
    pub projection_error: f64,
    pub obstruction_terms: Vec<String>,
    pub obstruction: Vec<f64>,
    pub obstruction_expected: Vec<f64>,
    pub obstruction_displayed: Vec<f64>,
    pub obstruction_nonzero: bool,
    /// Both `b` and `a` vanish: the plane branch.
    pub degenerate: bool,
    pub notes: Vec<String>,
}

fn d1(f: &dyn Fn(f64) -> f64, s: f64, h: f64) -> f64 {
    (f(s - 2.0 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2.0 * h)) / (12.0 * h)
}

fn d2(f: &dyn Fn(f64) -> f64, s: f64, h: f64) -> f64 {
    (-f(s - 2.0 * h) + 16.0 * f(s - h) - 30.0 * f(s) + 16.0 * f(s + h) - f(s + 2.0 * h)) / (12.0 * h * h)
}

/// Evaluates the closed forms of one case on `s_grid = (lo, hi, n)` and
/// projects the `(ab)` residual on the case's basis.
pub fn ode_branch_explore(spec: &OdeBranchSpec, s_grid: (f64, f64, usize)) -> Result<BranchReport> {
    let (lo, hi, n) = s_grid;
    if !(hi > lo) || n < 16 {
        return Err(GeomError::InvalidParameter("s grid needs hi > lo and at least 16 nodes".into()));
    }
    let s = linspace(lo, hi, n);
    let h = 1e-3;
    let b = |x: f64| spec.b(x);
    let a = |x: f64| spec.a(x);
    let a_disp = |x: f64| spec.a_with(x, true);
    let mu = spec.mu;
    let mut r = Vec::with_capacity(n);
    let (mut ode1, mut amub, mut amub_disp): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for &x in &s {
        let (bv, bp, bpp) = (b(x), d1(&b, x, h), d2(&b, x, h));
        let (av, ap, app) = (a(x), d1(&a, x, h), d2(&a, x, h));
        r.push(2.0 * ap * bv + bv * bp - av * bp);
        ode1 = ode1.max((bpp + spec.k * mu * bv).abs());
        amub = amub.max((app + mu * av - mu * bpp).abs());
        let adpp = d2(&a_disp, x, h);
        amub_disp = amub_disp.max((adpp + mu * a_disp(x) - mu * bpp).abs());
    }
    let sup = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let (basis, named) = spec.basis();
    // column-scaled least squares
    let m = DMatrix::from_fn(n, basis.len(), |i, j| basis[j].1.eval(s[i]));
    let scales: Vec<f64> = (0..basis.len())
        .map(|j| m.column(j).norm().max(f64::MIN_POSITIVE))
        .collect();
    let ms = DMatrix::from_fn(n, basis.len(), |i, j| m[(i, j)] / scales[j]);
    let rhs = DVector::from_vec(r.clone());
    let svd = ms.clone().svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-13)
        .map_err(|e| GeomError::InvalidParameter(format!("projection failed: {e}")))?;
    let coeffs: Vec<f64> = sol.iter().zip(&scales).map(|(x, sc)| x / sc).collect();
    let fit = &ms * &sol - &rhs;
    let projection_error = fit.amax() / sup.max(f64::MIN_POSITIVE);
    let obstruction: Vec<f64> = named.iter().map(|&i| coeffs[i]).collect();
    let degenerate = spec.c.iter().all(|&x| x == 0.0);
    let cmax = spec.c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let onorm = obstruction.iter().map(|x| x * x).sum::<f64>().sqrt();
    let obstruction_nonzero = !degenerate && onorm > 1e-8 * cmax * cmax.max(1.0);
    let mut notes = Vec::new();
    if degenerate {
        notes.push("b = 0: plane branch with Q = 0".into());
    }
    let expected = spec.expected_obstruction();
    let displayed = spec.displayed_obstruction();
    if expected
        .iter()
        .zip(&displayed)
        .any(|(x, y)| (x - y).abs() > 1e-9 * (1.0 + x.abs()))
    {
        notes.push("displayed obstruction differs from the recomputed one".into());
    }
    if spec.case == BranchCase::F {
        notes.push(format!(
            "displayed particular solution a = k/(k-1) b leaves sup|a'' + mu a - mu b''| = {amub_disp:.3e}; using a = -k/(k-1) b"
        ));
    }
    if spec.case == BranchCase::B && (spec.k - 0.5).abs() < 1e-12 {
        notes.push("k = 1/2: the sin/cos(2 w s) coefficients vanish identically; the unit-speed condition excludes the branch instead".into());
    }
    Ok(BranchReport {
        case: spec.case,
        mu,
        k: spec.k,
        c: spec.c,
        s_grid,
        ab_residual_sup: sup,
        ode1_residual_sup: ode1,
        amub_residual_sup: amub,
        amub_residual_sup_displayed: amub_disp,
        basis: basis.iter().map(|b| b.0.clone()).collect(),
        coefficients: coeffs,
        projection_error,
        obstruction_terms: named.iter().map(|&i| basis[i].0.clone()).collect(),
        obstruction,
        obstruction_expected: expected,
        obstruction_displayed: displayed,
        obstruction_nonzero,
        degenerate,
        notes,
    })
}

/// Outcome of a randomized sweep over the constants of one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchSweep {
    pub case: BranchCase,
    pub k: f64,
    pub draws: usize,
    pub seed: u64,
    /// Smallest `sup |ab residual| / max |c|` over the draws.
    pub min_residual_ratio: f64,
    /// Draws whose obstruction coefficient vanished.
    pub zero_obstructions: usize,
    /// Largest deviation between measured and recomputed obstruction,
    /// relative to `max |c|^2`.
    pub max_obstruction_error: f64,
    pub max_ode_residual: f64,
}

impl BranchSweep {
    /// Residual bound `sup >= 1e-4 max|c|` held and every obstruction was
    /// nonzero.
    pub fn sound(&self) -> bool {
        self.zero_obstructions == 0 && self.min_residual_ratio >= 1e-4
    }
}

/// Draws `draws` constant vectors uniformly from `[-1, 1]^4` and explores
/// the case at its representative `k`.
pub fn branch_sweep(case: BranchCase, draws: usize, seed: u64) -> Result<BranchSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (case as u64).wrapping_mul(0x9e37_79b9));
    let k = case.representative_k();
    let mut sweep = BranchSweep {
        case,
        k,
        draws,
        seed,
        min_residual_ratio: f64::INFINITY,
        zero_obstructions: 0,
        max_obstruction_error: 0.0,
        max_ode_residual: 0.0,
    };
    for _ in 0..draws {
        let c = loop {
            let c: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
            if c[0] != 0.0 || c[1] != 0.0 {
                break c;
            }
        };
        let spec = OdeBranchSpec::with_case(case, case.mu(), k, c)?;
        let rep = ode_branch_explore(&spec, DEFAULT_S_GRID)?;
        let cmax = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        sweep.min_residual_ratio = sweep.min_residual_ratio.min(rep.ab_residual_sup / cmax);
        sweep.zero_obstructions += usize::from(!rep.obstruction_nonzero);
        let err = rep
            .obstruction
            .iter()
            .zip(&rep.obstruction_expected)
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
            / (cmax * cmax);
        sweep.max_obstruction_error = sweep.max_obstruction_error.max(err);
        sweep.max_ode_residual = sweep
            .max_ode_residual
            .max(rep.ode1_residual_sup.max(rep.amub_residual_sup));
    }
    Ok(sweep)
}

/// `k = 1/2` in case (b) with `c3 = c4 = 0`: `a = -b` solves all three
/// equations, so the `(ab)` residual vanishes identically. The branch is
/// still excluded by the unit-speed condition `(a'' + a)^2 - b'^2 = 1`,
/// which `a = -b` violates.
pub fn case_b_half_k_solution(c1: f64, c2: f64) -> Result<BranchReport> {
    let spec = OdeBranchSpec::with_case(BranchCase::B, 1.0, 0.5, [c1, c2, 0.0, 0.0])?;
    ode_branch_explore(&spec, DEFAULT_S_GRID)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_a_example() {
        let spec = OdeBranchSpec::new(1.0, 1.0, [1.0, 0.0, 0.0, 0.0]).unwrap();
        let r = ode_branch_explore(&spec, DEFAULT_S_GRID).unwrap();
        assert_eq!(r.case, BranchCase::A);
        assert!((r.obstruction[0] + 1.0).abs() < 1e-8, "{r:#?}");
        assert!(r.obstruction_nonzero);
    }

    #[test]
    fn case_d_example() {
        let spec = OdeBranchSpec::new(-1.0, 1.0, [1.0, 0.0, 0.0, 0.0]).unwrap();
        let r = ode_branch_explore(&spec, DEFAULT_S_GRID).unwrap();
        assert_eq!(r.case, BranchCase::D);
        assert!((r.obstruction[0] + 0.5).abs() < 1e-8);
        assert!(r.obstruction[1].abs() < 1e-8);
    }

    #[test]
    fn zero_constants_give_zero_residual() {
        for case in BranchCase::ALL {
            let spec = OdeBranchSpec::with_case(case, case.mu(), case.representative_k(), [0.0; 4]).unwrap();
            let r = ode_branch_explore(&spec, DEFAULT_S_GRID).unwrap();
            assert_eq!(r.ab_residual_sup, 0.0);
            assert!(r.degenerate && !r.obstruction_nonzero);
        }
    }

    #[test]
    fn invalid_cases() {
        assert!(OdeBranchSpec::new(0.5, 1.0, [1.0; 4]).is_err());
        assert!(OdeBranchSpec::new(1.0, 0.0, [1.0; 4]).is_err());
        assert!(OdeBranchSpec::with_case(BranchCase::A, 1.0, 2.0, [1.0; 4]).is_err());
        assert!(OdeBranchSpec::new(1.0, 2.0, [0.0, 0.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn closed_forms_solve_the_odes() {
        for case in BranchCase::ALL {
            let s = branch_sweep(case, 10, 7).unwrap();
            assert!(s.max_ode_residual < 1e-7, "{case}: {s:?}");
            assert!(s.max_obstruction_error < 1e-7, "{case}: {s:?}");
            assert!(s.sound(), "{case}: {s:?}");
        }
    }

    #[test]
    fn displayed_case_f_solution_fails() {
        let spec = OdeBranchSpec::new(-1.0, -2.0, [1.0, 0.5, 0.0, 0.0]).unwrap();
        let r = ode_branch_explore(&spec, DEFAULT_S_GRID).unwrap();
        assert!(r.amub_residual_sup < 1e-7);
        assert!(r.amub_residual_sup_displayed > 0.1);
    }

    #[test]
    fn half_k_in_case_b_escapes_the_obstruction() {
        let r = case_b_half_k_solution(1.0, 0.3).unwrap();
        assert!(r.ab_residual_sup < 1e-9, "{r:#?}");
        assert!(!r.obstruction_nonzero);
    }
}
