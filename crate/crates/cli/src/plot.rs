//! Accurate rasterization of planar located sets as plain PGM.

use loctop::located::sets::ExactSet;
use loctop::located::Decision;
use loctop::metric_locale::{FormalBall, Point2};
use loctop::numerics::{int, precision_bits, sqrt_bounds, Rational};
use rayon::prelude::*;
use thiserror::Error;

pub const DEFAULT_MAX_PIXELS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlotError {
    #[error("the set is empty")]
    EmptySet,
    #[error("degenerate viewport: {0}")]
    DegenerateViewport(String),
    #[error("image of {0} pixels exceeds the limit of {1}")]
    TooLarge(u64, u64),
    #[error("pixel query failed: {0}")]
    Query(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Viewport {
    pub xmin: Rational,
    pub xmax: Rational,
    pub ymin: Rational,
    pub ymax: Rational,
}

#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub set: ExactSet,
    pub viewport: Viewport,
    pub width: u32,
    pub height: u32,
    pub max_pixels: u64,
}

impl PlotSpec {
    pub fn new(set: ExactSet, viewport: Viewport, width: u32, height: u32) -> Self {
        PlotSpec { set, viewport, width, height, max_pixels: DEFAULT_MAX_PIXELS }
    }

    fn validate(&self) -> Result<(), PlotError> {
        let v = &self.viewport;
        if v.xmin >= v.xmax || v.ymin >= v.ymax {
            return Err(PlotError::DegenerateViewport(format!("{},{},{},{}", v.xmin, v.xmax, v.ymin, v.ymax)));
        }
        if self.width == 0 || self.height == 0 {
            return Err(PlotError::DegenerateViewport(format!("size {}x{}", self.width, self.height)));
        }
        let pixels = u64::from(self.width) * u64::from(self.height);
        if pixels > self.max_pixels {
            return Err(PlotError::TooLarge(pixels, self.max_pixels));
        }
        if !self.set.is_inhabited() {
            return Err(PlotError::EmptySet);
        }
        Ok(())
    }

    pub fn pixel_width(&self) -> Rational {
        (&self.viewport.xmax - &self.viewport.xmin) / int(i64::from(self.width))
    }

    pub fn pixel_height(&self) -> Rational {
        (&self.viewport.ymax - &self.viewport.ymin) / int(i64::from(self.height))
    }

    /// Center of pixel `(col, row)`; row 0 is the top.
    pub fn pixel_center(&self, col: u32, row: u32) -> Point2 {
        let half = Rational::new(1.into(), 2.into());
        let x = &self.viewport.xmin + self.pixel_width() * (Rational::from_integer(col.into()) + &half);
        let y = &self.viewport.ymax - self.pixel_height() * (Rational::from_integer(row.into()) + &half);
        Point2::new(x, y)
    }

    /// A rational upper bound on half the pixel diagonal, within a small
    /// relative error of the true value.
    pub fn inner_radius(&self) -> Rational {
        let (w, h) = (self.pixel_width(), self.pixel_height());
        let half_diag2 = (&w * &w + &h * &h) / int(4);
        let k = 24 + precision_bits(if w < h { &w } else { &h });
        sqrt_bounds(&half_diag2, k).1
    }
}

/// Per pixel: black (0) when the set meets the ball of twice the inner radius
/// around the pixel center, white (255) when it misses the inner ball.
pub fn render_plot(spec: &PlotSpec) -> Result<String, PlotError> {
    spec.validate()?;
    let pred = spec.set.plane_predicate();
    let r = spec.inner_radius();
    let outer_r = &r * int(2);
    let rows: Vec<Result<Vec<u8>, PlotError>> = (0..spec.height)
        .into_par_iter()
        .map(|row| {
            (0..spec.width)
                .map(|col| {
                    let c = spec.pixel_center(col, row);
                    let inner = FormalBall::new(c.clone(), r.clone());
                    let outer = FormalBall::new(c, outer_r.clone());
                    match pred.decide(&inner, &outer) {
                        Ok(Decision::PosOuter) => Ok(0),
                        Ok(Decision::NotPosInner) => Ok(255),
                        Err(e) => Err(PlotError::Query(e.to_string())),
                    }
                })
                .collect()
        })
        .collect();
    let mut out = format!("P2\n{} {}\n255\n", spec.width, spec.height);
    for row in rows {
        let row = row?;
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

/// Pixel values of a PGM produced by `render_plot`, row-major.
pub fn pgm_pixels(pgm: &str) -> Option<(u32, u32, Vec<u8>)> {
    let mut tokens = pgm.split_whitespace();
    if tokens.next()? != "P2" {
        return None;
    }
    let w: u32 = tokens.next()?.parse().ok()?;
    let h: u32 = tokens.next()?.parse().ok()?;
    tokens.next()?;
    let px: Vec<u8> = tokens.map(|t| t.parse().ok()).collect::<Option<_>>()?;
    (px.len() as u64 == u64::from(w) * u64::from(h)).then_some((w, h, px))
}

#[cfg(test)]
mod tests {
    use super::*;
    use loctop::numerics::rat;

    fn unit() -> Viewport {
        Viewport { xmin: int(0), xmax: int(1), ymin: int(0), ymax: int(1) }
    }

    #[test]
    fn corner_point() {
        let set = ExactSet::Points(vec![Point2::new(int(0), int(0))]);
        let pgm = render_plot(&PlotSpec::new(set, unit(), 4, 4)).unwrap();
        let (_, _, px) = pgm_pixels(&pgm).unwrap();
        let black: Vec<usize> = px.iter().enumerate().filter(|(_, v)| **v == 0).map(|(i, _)| i).collect();
        // bottom-left pixel, plus its neighbours within 2r = √2/4 of their centers
        assert_eq!(black, vec![12]);
    }

    #[test]
    fn full_ambient_is_black() {
        let set = ExactSet::disk(rat(1, 2), rat(1, 2), int(1));
        let pgm = render_plot(&PlotSpec::new(set, unit(), 8, 8)).unwrap();
        assert!(pgm_pixels(&pgm).unwrap().2.iter().all(|&v| v == 0));
    }

    #[test]
    fn degenerate_inputs() {
        let v = Viewport { xmin: int(1), ..unit() };
        assert!(matches!(render_plot(&PlotSpec::new(ExactSet::Cantor, v, 4, 4)), Err(PlotError::DegenerateViewport(_))));
        let mut s = PlotSpec::new(ExactSet::Cantor, unit(), 2000, 2000);
        assert!(matches!(render_plot(&s), Err(PlotError::TooLarge(..))));
        s.width = 0;
        assert!(render_plot(&s).is_err());
        let empty = ExactSet::Points(vec![]);
        assert_eq!(render_plot(&PlotSpec::new(empty, unit(), 4, 4)), Err(PlotError::EmptySet));
    }

    #[test]
    fn inner_radius_bounds_half_diagonal() {
        let s = PlotSpec::new(ExactSet::Cantor, unit(), 16, 16);
        let r = s.inner_radius();
        let w = s.pixel_width();
        assert!(&r * &r * int(4) >= &w * &w * int(2));
        assert!(r < &w * rat(71, 100));
    }
}
