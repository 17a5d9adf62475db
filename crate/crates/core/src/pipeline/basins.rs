//! Basins of attraction of the critical five-cycles, rendered in `f64`.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::binform::{chordal_distance_c64, PlaneMap};
use crate::error::{Error, Result};

type Point = (Complex64, Complex64);

/// An axis-aligned rectangle `[x0, x1] × [y0, y1]` of the affine chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Viewport {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        let finite = [x0, y0, x1, y1].iter().all(|v| v.is_finite());
        if !finite || x1 <= x0 || y1 <= y0 {
            return Err(Error::InvalidArgument(format!(
                "viewport {x0},{y0},{x1},{y1} is not a non-empty rectangle"
            )));
        }
        Ok(Viewport { x0, y0, x1, y1 })
    }
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport {
            x0: -1.5,
            y0: -1.5,
            x1: 1.5,
            y1: 1.5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasinConfig {
    pub width: usize,
    pub height: usize,
    pub viewport: Viewport,
    pub max_iter: usize,
    /// Chordal distance at which an orbit counts as captured.
    pub capture: f64,
}

impl Default for BasinConfig {
    fn default() -> Self {
        BasinConfig {
            width: 512,
            height: 512,
            viewport: Viewport::default(),
            max_iter: 300,
            capture: 1e-4,
        }
    }
}

/// Per-pixel outcome: the attractor index and the iterations it took, or
/// `None` when the orbit was not captured.
#[derive(Clone, Debug)]
pub struct BasinImage {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<Option<(u8, u16)>>,
    max_iter: usize,
}

/// Iterates `map` from the centre of each pixel until it comes within the
/// capture radius of a point of one of the `cycles`.
pub fn render_basins(map: &PlaneMap<Complex64>, cycles: &[Vec<Point>], cfg: &BasinConfig) -> Result<BasinImage> {
    if cfg.width == 0 || cfg.height == 0 {
        return Err(Error::InvalidArgument("image resolution must be positive".into()));
    }
    if cycles.is_empty() || cycles.len() > u8::MAX as usize {
        return Err(Error::InvalidArgument(format!("{} attractors", cycles.len())));
    }
    let targets: Vec<(u8, Point)> = cycles
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&p| (i as u8, p)))
        .collect();
    let vp = cfg.viewport;
    let cells: Vec<Option<(u8, u16)>> = (0..cfg.height)
        .into_par_iter()
        .flat_map_iter(|row| {
            let targets = &targets;
            let y = vp.y1 - (row as f64 + 0.5) / cfg.height as f64 * (vp.y1 - vp.y0);
            (0..cfg.width).map(move |col| {
                let x = vp.x0 + (col as f64 + 0.5) / cfg.width as f64 * (vp.x1 - vp.x0);
                capture(map, (Complex64::new(x, y), Complex64::new(1.0, 0.0)), targets, cfg)
            })
        })
        .collect();
    Ok(BasinImage {
        width: cfg.width,
        height: cfg.height,
        cells,
        max_iter: cfg.max_iter,
    })
}

fn capture(map: &PlaneMap<Complex64>, start: Point, targets: &[(u8, Point)], cfg: &BasinConfig) -> Option<(u8, u16)> {
    let mut p = start;
    for n in 0..=cfg.max_iter {
        if let Some(&(i, _)) = targets.iter().find(|(_, t)| chordal_distance_c64(p, *t) < cfg.capture) {
            return Some((i, n.min(u16::MAX as usize) as u16));
        }
        p = map.apply_c64(p);
        if !(p.0.is_finite() && p.1.is_finite()) {
            return None;
        }
    }
    None
}

/// Twelve well-separated hues.
fn palette(i: u8) -> [f64; 3] {
    let h = (i as f64 * 5.0 / 12.0).fract() * 6.0;
    let x = 1.0 - (h % 2.0 - 1.0).abs();
    match h as u32 {
        0 => [1.0, x, 0.0],
        1 => [x, 1.0, 0.0],
        2 => [0.0, 1.0, x],
        3 => [0.0, x, 1.0],
        4 => [x, 0.0, 1.0],
        _ => [1.0, 0.0, x],
    }
}

impl BasinImage {
    /// Fraction of pixels captured by some attractor.
    pub fn assigned_fraction(&self) -> f64 {
        self.cells.iter().filter(|c| c.is_some()).count() as f64 / self.cells.len() as f64
    }

    /// Pixels captured by each attractor.
    pub fn histogram(&self, attractors: usize) -> Vec<usize> {
        let mut h = vec![0; attractors];
        for &(i, _) in self.cells.iter().flatten() {
            if (i as usize) < attractors {
                h[i as usize] += 1;
            }
        }
        h
    }

    /// RGB bytes, row-major: hue by attractor, darker with more iterations,
    /// black when uncaptured.
    pub fn rgb(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.cells.len() * 3);
        for cell in &self.cells {
            match cell {
                None => out.extend_from_slice(&[0, 0, 0]),
                Some((i, n)) => {
                    let shade = 1.0 - 0.75 * (*n as f64 / self.max_iter.max(1) as f64).sqrt();
                    for c in palette(*i) {
                        out.push((255.0 * (0.15 + 0.85 * c) * shade).round() as u8);
                    }
                }
            }
        }
        out
    }

    /// Binary PPM (`P6`, 8-bit).
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(self.rgb());
        out
    }

    pub fn write_ppm(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(&self.to_ppm())?;
        Ok(())
    }
}
