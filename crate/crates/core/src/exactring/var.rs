use std::fmt;

use serde::{Deserialize, Serialize};

/// A loop variable `x_site^(color)`; the color is stored as its canonical
/// residue in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarId {
    site: u32,
    color: u32,
}

impl VarId {
    /// Builds `x_site^(raw)` with `raw` reduced to `((raw − 1) mod n) + 1`.
    pub fn new(site: u32, raw_color: i64, n: u32) -> Self {
        assert!(n >= 1, "number of colors must be positive");
        assert!(site >= 1, "sites are numbered from 1");
        VarId { site, color: canonical_color(raw_color, n) }
    }

    pub fn site(&self) -> u32 {
        self.site
    }

    pub fn color(&self) -> u32 {
        self.color
    }
}

/// `((raw − 1) mod n) + 1`.
pub fn canonical_color(raw: i64, n: u32) -> u32 {
    ((raw - 1).rem_euclid(n as i64) + 1) as u32
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{}]^({})", self.site, self.color)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colors_wrap() {
        assert_eq!(VarId::new(1, 4, 3), VarId::new(1, 1, 3));
        assert_eq!(VarId::new(2, 0, 3).color(), 3);
        assert_eq!(VarId::new(2, -5, 2).color(), 1);
        assert_eq!(VarId::new(5, 7, 1).color(), 1);
    }

    #[test]
    fn display_form() {
        assert_eq!(VarId::new(3, 2, 2).to_string(), "x[3]^(2)");
    }
}
