//! Deterministic number formatting shared by every output surface.

use noswitch_core::QuadPair;

/// 12 significant digits in scientific-compatible form; the same
/// formatting backs the CSV cells and the printed reports, so sweep
/// cells and single-point outputs compare exactly.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn sig12_pair(p: QuadPair) -> String {
    format!("({}, {})", sig12(p.plus), sig12(p.minus))
}
