//! Spacetime rendering: one row per time step, colored by the rule that
//! produced it.

use crate::config::{step_cells, Configuration};
use crate::error::{Error, Result};
use crate::rule::LocalRule;
use crate::sequence::{RuleChoice, RuleSequence};
use std::io::Write;

/// Colors and pixel scale for a rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub f_color: [u8; 3],
    pub g_color: [u8; 3],
    pub zero_color: [u8; 3],
    pub scale: u32,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            f_color: [0, 0, 255],
            g_color: [255, 0, 0],
            zero_color: [255, 255, 255],
            scale: 1,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.scale == 0 {
            return Err(Error::ZeroScale);
        }
        if self.f_color == self.g_color
            || self.f_color == self.zero_color
            || self.g_color == self.zero_color
        {
            return Err(Error::IndistinctColors);
        }
        Ok(())
    }
}

/// Raw RGB raster, rows top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<u8>,
}

/// Runs the schedule at cell level and paints each row: nonzero cells get the
/// color of the rule that made the row, the initial row uses the first rule's
/// color, zero cells stay on the background.
pub fn render_spacetime(
    f: &LocalRule,
    g: &LocalRule,
    seq: &RuleSequence,
    initial: &Configuration,
    steps: u64,
    spec: &RenderSpec,
) -> Result<Image> {
    spec.validate()?;
    for rule in [f, g] {
        if rule.states() != initial.states() {
            return Err(Error::AlphabetMismatch {
                rule_states: rule.states(),
                config_states: initial.states(),
            });
        }
    }
    let n = initial.len();
    let scale = spec.scale as usize;
    let width = n * scale;
    let height = (steps as usize + 1) * scale;
    let mut pixels = vec![0u8; width * height * 3];

    let mut paint_row = |row: usize, cells: &[u8], color: [u8; 3]| {
        for (i, &cell) in cells.iter().enumerate() {
            let rgb = if cell == 0 { spec.zero_color } else { color };
            for dy in 0..scale {
                let y = row * scale + dy;
                for dx in 0..scale {
                    let x = i * scale + dx;
                    let at = (y * width + x) * 3;
                    pixels[at..at + 3].copy_from_slice(&rgb);
                }
            }
        }
    };

    let mut cells = initial.cells().to_vec();
    let mut next = vec![0u8; n];
    paint_row(0, &cells, spec.f_color);
    for t in 1..=steps {
        let rule = seq.rule_at(t)?;
        let (local, color) = match rule {
            RuleChoice::F => (f, spec.f_color),
            RuleChoice::G => (g, spec.g_color),
        };
        step_cells(local, &cells, &mut next);
        std::mem::swap(&mut cells, &mut next);
        paint_row(t as usize, &cells, color);
    }
    Ok(Image {
        width: width as u32,
        height: height as u32,
        pixels,
    })
}

/// Writes the raster as a binary P6 portable pixmap.
pub fn write_ppm(image: &Image, out: &mut impl Write) -> Result<()> {
    write!(out, "P6\n{} {}\n255\n", image.width, image.height)?;
    out.write_all(&image.pixels)?;
    Ok(())
}
