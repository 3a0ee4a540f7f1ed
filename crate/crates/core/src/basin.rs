//! Basins of attraction on a rectangular grid of starting points, coloured by
//! root and shaded by iteration count, encoded as binary PPM.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::methods::{step, MethodKind, MethodSpec};
use crate::problems::{lookup, Multiplicity, Problem};
use crate::scalar::Precision;

pub const DEFAULT_CAP: u32 = 100;
pub const DEFAULT_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GridError {
    #[error("grid bounds must satisfy re_min < re_max and im_min < im_max")]
    EmptyRegion,
    #[error("grid size must be at least 1x1")]
    EmptyRaster,
    #[error("cannot parse `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub width: usize,
    pub height: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { re_min: -3.0, re_max: 3.0, im_min: -3.0, im_max: 3.0, width: 256, height: 256 }
    }
}

impl GridSpec {
    pub fn new(
        re_min: f64,
        re_max: f64,
        im_min: f64,
        im_max: f64,
        width: usize,
        height: usize,
    ) -> Result<Self, GridError> {
        // Written so that NaN bounds are rejected too.
        if !(re_min < re_max && im_min < im_max) {
            return Err(GridError::EmptyRegion);
        }
        if width == 0 || height == 0 {
            return Err(GridError::EmptyRaster);
        }
        Ok(GridSpec { re_min, re_max, im_min, im_max, width, height })
    }

    /// Same bounds, different raster size.
    pub fn with_size(self, width: usize, height: usize) -> Result<Self, GridError> {
        GridSpec::new(self.re_min, self.re_max, self.im_min, self.im_max, width, height)
    }

    /// Parses `re_min,re_max,im_min,im_max`.
    pub fn with_bounds(self, bounds: &str) -> Result<Self, GridError> {
        let parts: Vec<f64> = bounds
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| GridError::Parse(bounds.to_string())))
            .collect::<Result<_, _>>()?;
        let [a, b, c, d] = parts[..] else {
            return Err(GridError::Parse(bounds.to_string()));
        };
        GridSpec::new(a, b, c, d, self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Starting point at the centre of pixel (`col`, `row`), row 0 at the top.
    pub fn point(&self, col: usize, row: usize) -> Complex64 {
        let w = self.re_max - self.re_min;
        let h = self.im_max - self.im_min;
        Complex64::new(
            self.re_min + (col as f64 + 0.5) * w / self.width as f64,
            self.im_max - (row as f64 + 0.5) * h / self.height as f64,
        )
    }
}

/// Parses `WxH`, e.g. `256x256`.
pub fn parse_size(text: &str) -> Result<(usize, usize), GridError> {
    let err = || GridError::Parse(text.to_string());
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(err)?;
    Ok((w.trim().parse().map_err(|_| err())?, h.trim().parse().map_err(|_| err())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PixelOutcome {
    Converged { root: usize, iterations: u32 },
    Diverged,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orbit {
    pub outcome: PixelOutcome,
    /// The last iterate computed before classification.
    pub last: Complex64,
}

fn nearest_within(roots: &[Complex64], z: Complex64, tol: f64) -> Option<usize> {
    roots
        .iter()
        .enumerate()
        .map(|(k, r)| (k, (z - r).norm()))
        .filter(|&(_, d)| d <= tol)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(k, _)| k)
}

/// Iterates from `z0` until it enters the `tol`-ball of a root, fails, or
/// exhausts `cap` steps.
pub fn trace_orbit(
    p: &Problem,
    spec: &MethodSpec,
    roots: &[Complex64],
    z0: Complex64,
    cap: u32,
    tol: f64,
) -> Orbit {
    let mut z = z0;
    if let Some(root) = nearest_within(roots, z, tol) {
        return Orbit { outcome: PixelOutcome::Converged { root, iterations: 0 }, last: z };
    }
    for n in 1..=cap {
        match step(p, spec, &z) {
            Ok(out) if out.next.re.is_finite() && out.next.im.is_finite() => z = out.next,
            _ => return Orbit { outcome: PixelOutcome::Diverged, last: z },
        }
        if let Some(root) = nearest_within(roots, z, tol) {
            return Orbit { outcome: PixelOutcome::Converged { root, iterations: n }, last: z };
        }
    }
    Orbit { outcome: PixelOutcome::Diverged, last: z }
}

pub fn classify_orbit(
    p: &Problem,
    spec: &MethodSpec,
    roots: &[Complex64],
    z0: Complex64,
    cap: u32,
    tol: f64,
) -> PixelOutcome {
    trace_orbit(p, spec, roots, z0, cap, tol).outcome
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasinConfig {
    pub problem: String,
    pub method: MethodSpec,
    pub cap: u32,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BasinError {
    #[error("problem `{0}` is not a complex problem")]
    NotComplex(String),
    #[error("problem `{0}` has no known roots")]
    NoRoots(String),
    #[error("problem `{0}` lacks the second derivative required by {1}")]
    NeedsSecondDerivative(String, MethodKind),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasinImage {
    pub grid: GridSpec,
    pub config: BasinConfig,
    pub roots: Vec<Complex64>,
    /// Row-major from the top-left pixel.
    pub outcomes: Vec<PixelOutcome>,
}

fn prepare(p: &Problem, spec: &MethodSpec) -> Result<Vec<Complex64>, BasinError> {
    if !p.is_complex() {
        return Err(BasinError::NotComplex(p.name().to_string()));
    }
    if spec.kind.needs_second_derivative() && !p.has_second_derivative() {
        return Err(BasinError::NeedsSecondDerivative(p.name().to_string(), spec.kind));
    }
    let roots: Vec<Complex64> = p.roots(Precision::Double).unwrap_or_default();
    if roots.is_empty() {
        return Err(BasinError::NoRoots(p.name().to_string()));
    }
    Ok(roots)
}

/// Renders with the default cap and tolerance, pixels evaluated in parallel.
pub fn render(p: &Problem, spec: &MethodSpec, grid: GridSpec) -> Result<BasinImage, BasinError> {
    render_with(p, spec, grid, DEFAULT_CAP, DEFAULT_TOL)
}

pub fn render_with(
    p: &Problem,
    spec: &MethodSpec,
    grid: GridSpec,
    cap: u32,
    tol: f64,
) -> Result<BasinImage, BasinError> {
    let roots = prepare(p, spec)?;
    let outcomes = (0..grid.len())
        .into_par_iter()
        .map(|idx| classify_orbit(p, spec, &roots, grid.point(idx % grid.width, idx / grid.width), cap, tol))
        .collect();
    Ok(image(p, spec, grid, cap, tol, roots, outcomes))
}

/// Renders serially, visiting pixels in the order given by `order` (a
/// permutation of `0..grid.len()`).
pub fn render_in_order(
    p: &Problem,
    spec: &MethodSpec,
    grid: GridSpec,
    order: &[usize],
) -> Result<BasinImage, BasinError> {
    let roots = prepare(p, spec)?;
    let mut outcomes = vec![PixelOutcome::Diverged; grid.len()];
    for &idx in order {
        let z0 = grid.point(idx % grid.width, idx / grid.width);
        outcomes[idx] = classify_orbit(p, spec, &roots, z0, DEFAULT_CAP, DEFAULT_TOL);
    }
    Ok(image(p, spec, grid, DEFAULT_CAP, DEFAULT_TOL, roots, outcomes))
}

fn image(
    p: &Problem,
    spec: &MethodSpec,
    grid: GridSpec,
    cap: u32,
    tol: f64,
    roots: Vec<Complex64>,
    outcomes: Vec<PixelOutcome>,
) -> BasinImage {
    BasinImage {
        grid,
        config: BasinConfig { problem: p.name().to_string(), method: *spec, cap, tol },
        roots,
        outcomes,
    }
}

/// Per-root pixel counts and the diverged count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasinSummary {
    pub per_root: Vec<usize>,
    pub diverged: usize,
}

impl fmt::Display for BasinSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, n) in self.per_root.iter().enumerate() {
            write!(f, "root{k}={n} ")?;
        }
        write!(f, "diverged={}", self.diverged)
    }
}

impl BasinImage {
    pub fn outcome(&self, col: usize, row: usize) -> PixelOutcome {
        self.outcomes[row * self.grid.width + col]
    }

    pub fn summary(&self) -> BasinSummary {
        let mut per_root = vec![0; self.roots.len()];
        let mut diverged = 0;
        for o in &self.outcomes {
            match *o {
                PixelOutcome::Converged { root, .. } => per_root[root] += 1,
                PixelOutcome::Diverged => diverged += 1,
            }
        }
        BasinSummary { per_root, diverged }
    }

    /// `<problem>_<method>_<W>x<H>.ppm`
    pub fn file_name(&self) -> String {
        file_name(&self.config.problem, self.config.method.kind, &self.grid)
    }

    /// RGB bytes, row-major from the top-left.
    pub fn rgb(&self) -> Vec<u8> {
        let k = self.roots.len();
        self.outcomes.iter().flat_map(|o| pixel_color(*o, k, self.config.cap)).collect()
    }

    pub fn encode_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.grid.width, self.grid.height).into_bytes();
        out.extend(self.rgb());
        out
    }
}

pub fn file_name(problem: &str, method: MethodKind, grid: &GridSpec) -> String {
    format!("{problem}_{}_{}x{}.ppm", method.name(), grid.width, grid.height)
}

fn channel(x: f64) -> u8 {
    (x * 255.0 + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Hexcone HSV to RGB with `h, s, v` in `[0, 1]`.
pub fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let h6 = (h - h.floor()) * 6.0;
    let sector = h6.floor();
    let f = h6 - sector;
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * f);
    let t = v * (1.0 - s * (1.0 - f));
    let (r, g, b) = match sector as u8 {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    [channel(r), channel(g), channel(b)]
}

/// Colour of one pixel given `roots` known roots and iteration cap `cap`.
pub fn pixel_color(outcome: PixelOutcome, roots: usize, cap: u32) -> [u8; 3] {
    match outcome {
        PixelOutcome::Diverged => [0, 0, 0],
        PixelOutcome::Converged { root, iterations } => {
            let h = root as f64 / roots as f64;
            let v = 0.3 + 0.7 * (1.0 - f64::from(iterations) / f64::from(cap)).max(0.0);
            hsv_to_rgb(h, 1.0, v)
        }
    }
}

/// One panel of the published basin figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Panel {
    pub figure: u8,
    pub problem: &'static str,
    pub method: MethodKind,
}

impl Panel {
    pub fn problem(&self) -> Problem {
        lookup(self.problem).expect("figure problems are registered")
    }

    pub fn spec(&self) -> MethodSpec {
        MethodSpec::for_problem(self.method, &self.problem())
    }

    pub fn multiplicity(&self) -> Multiplicity {
        self.problem().multiplicity()
    }
}

/// Figure 1: Potra-Pták on p1, p2, p3. Figures 2-5: mpp, osada, dong, chun on
/// p1pow5, p2pow3, p1pow2.
pub fn figure_panels() -> Vec<Panel> {
    let mut panels: Vec<Panel> = ["p1", "p2", "p3"]
        .into_iter()
        .map(|problem| Panel { figure: 1, problem, method: MethodKind::PotraPtak })
        .collect();
    for (figure, method) in (2u8..).zip(MethodKind::TABLE) {
        for problem in ["p1pow5", "p2pow3", "p1pow2"] {
            panels.push(Panel { figure, problem, method });
        }
    }
    panels
}

impl FromStr for GridSpec {
    type Err = GridError;

    /// `re_min,re_max,im_min,im_max` at the default raster size.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GridSpec::default().with_bounds(s)
    }
}
