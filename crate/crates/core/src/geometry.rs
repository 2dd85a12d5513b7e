use crate::error::{Error, Result};

/// Positions on a chain of `2n` sites: a cut after site `n1` and optionally a
/// second site `n2 > n1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainGeometry {
    n: usize,
    n1: usize,
    n2: Option<usize>,
}

impl ChainGeometry {
    /// A single site `n1 ∈ [1, 2n]` on a chain of `two_n` sites.
    pub fn cut(two_n: usize, n1: usize) -> Result<Self> {
        check_length(two_n)?;
        if n1 == 0 || n1 > two_n {
            return Err(Error::InvalidGeometry(format!(
                "site {n1} outside [1, {two_n}]"
            )));
        }
        Ok(ChainGeometry {
            n: two_n / 2,
            n1,
            n2: None,
        })
    }

    /// Two sites `1 ≤ n1 < n2 ≤ 2n`.
    pub fn pair(two_n: usize, n1: usize, n2: usize) -> Result<Self> {
        let g = Self::cut(two_n, n1)?;
        if n2 <= n1 || n2 > two_n {
            return Err(Error::InvalidGeometry(format!(
                "need {n1} < n2 <= {two_n}, got n2 = {n2}"
            )));
        }
        Ok(ChainGeometry {
            n2: Some(n2),
            ..g
        })
    }

    /// Block of length `block` centered on the middle of the chain, i.e.
    /// sites `n - L/2` and `n + L/2`. `block` must be even and positive.
    pub fn centered_block(two_n: usize, block: usize) -> Result<Self> {
        check_length(two_n)?;
        let n = two_n / 2;
        if block == 0 || block % 2 == 1 || block / 2 >= n {
            return Err(Error::InvalidGeometry(format!(
                "block length {block} cannot be centered on a chain of {two_n} sites"
            )));
        }
        Self::pair(two_n, n - block / 2, n + block / 2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn two_n(&self) -> usize {
        2 * self.n
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> Option<usize> {
        self.n2
    }

    /// `L = n2 - n1`, when a second site is present.
    pub fn block_length(&self) -> Option<usize> {
        self.n2.map(|n2| n2 - self.n1)
    }

    /// `b = min(n1, 2n - n1)`.
    pub fn boundary_distance(&self) -> usize {
        self.n1.min(self.two_n() - self.n1)
    }

    pub(crate) fn require_bulk(&self) -> Result<()> {
        if self.boundary_distance() == 0 {
            return Err(Error::InvalidGeometry(format!(
                "cut at site {} is not inside the chain",
                self.n1
            )));
        }
        Ok(())
    }

    pub(crate) fn require_pair(&self) -> Result<usize> {
        self.n2.ok_or_else(|| Error::InvalidGeometry("second site n2 is required".into()))
    }
}

fn check_length(two_n: usize) -> Result<()> {
    if two_n == 0 || two_n % 2 == 1 {
        return Err(Error::InvalidGeometry(format!(
            "chain length must be even and positive, got {two_n}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let g = ChainGeometry::pair(170, 80, 90).unwrap();
        assert_eq!(g.n(), 85);
        assert_eq!(g.block_length(), Some(10));
        assert_eq!(g.boundary_distance(), 80);
        let g = ChainGeometry::cut(10, 7).unwrap();
        assert_eq!(g.boundary_distance(), 3);
        assert_eq!(ChainGeometry::centered_block(170, 10).unwrap().n1(), 80);
    }

    #[test]
    fn rejects_invalid_sites() {
        assert!(ChainGeometry::cut(7, 2).is_err());
        assert!(ChainGeometry::cut(8, 0).is_err());
        assert!(ChainGeometry::cut(8, 9).is_err());
        assert!(ChainGeometry::pair(8, 4, 4).is_err());
        assert!(ChainGeometry::centered_block(8, 3).is_err());
        assert!(ChainGeometry::cut(8, 8).unwrap().require_bulk().is_err());
    }
}
