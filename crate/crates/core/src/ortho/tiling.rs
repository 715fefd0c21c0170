//! Bicolored Favard tilings of the strip `1..=n` by monominoes and dominoes.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{Poly, Scalar};

use super::CoeffSystem;

/// Largest `n` accepted by the tiling expansions.
pub const MAX_TILING_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TileKind {
    BlackMonomino,
    RedMonomino,
    BlackDomino,
    RedDomino,
}

impl TileKind {
    pub fn len(self) -> usize {
        match self {
            TileKind::BlackMonomino | TileKind::RedMonomino => 1,
            TileKind::BlackDomino | TileKind::RedDomino => 2,
        }
    }

    fn letter(self) -> &'static str {
        match self {
            TileKind::BlackMonomino => "b",
            TileKind::RedMonomino => "r",
            TileKind::BlackDomino => "B",
            TileKind::RedDomino => "R",
        }
    }

    const ALL: [TileKind; 4] = [
        TileKind::BlackMonomino,
        TileKind::RedMonomino,
        TileKind::BlackDomino,
        TileKind::RedDomino,
    ];
}

/// A tile covers cells `last + 1 - len ..= last`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tile {
    pub kind: TileKind,
    pub last: usize,
}

impl Tile {
    /// Signed coefficient weight; `i` is the largest covered cell.
    pub fn weight(&self, cs: &CoeffSystem) -> Scalar {
        let i = self.last;
        match self.kind {
            TileKind::BlackMonomino => Scalar::one(),
            TileKind::RedMonomino => -cs.b(i - 1),
            TileKind::BlackDomino => -cs.a(i - 1),
            TileKind::RedDomino => -cs.lambda(i - 1),
        }
    }

    /// Power of `x` contributed to `P_n`.
    pub fn x_power(&self) -> usize {
        match self.kind {
            TileKind::BlackMonomino | TileKind::BlackDomino => 1,
            TileKind::RedMonomino | TileKind::RedDomino => 0,
        }
    }

    /// Power of `x` contributed to the reversed polynomial `P*_n`.
    pub fn x_power_reversed(&self) -> usize {
        match self.kind {
            TileKind::BlackMonomino => 0,
            TileKind::RedMonomino | TileKind::BlackDomino => 1,
            TileKind::RedDomino => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FavardTiling {
    pub n: usize,
    pub tiles: Vec<Tile>,
}

impl FavardTiling {
    pub fn weight(&self, cs: &CoeffSystem) -> Scalar {
        self.tiles.iter().map(|t| t.weight(cs)).product()
    }

    /// Monomial `wt(T) x^{bm + bd}`.
    pub fn monomial(&self, cs: &CoeffSystem) -> Poly {
        let e: usize = self.tiles.iter().map(Tile::x_power).sum();
        Poly::monomial(e, self.weight(cs))
    }

    /// Monomial `wt(T) x^{rm + bd + 2 rd}`.
    pub fn monomial_reversed(&self, cs: &CoeffSystem) -> Poly {
        let e: usize = self.tiles.iter().map(Tile::x_power_reversed).sum();
        Poly::monomial(e, self.weight(cs))
    }
}

impl fmt::Display for FavardTiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tiles {
            write!(f, "{}", t.kind.letter())?;
        }
        Ok(())
    }
}

fn visit(n: usize, pos: usize, stack: &mut Vec<Tile>, f: &mut dyn FnMut(&[Tile])) {
    if pos == n {
        f(stack);
        return;
    }
    for kind in TileKind::ALL {
        let last = pos + kind.len();
        if last > n {
            continue;
        }
        stack.push(Tile { kind, last });
        visit(n, last, stack, f);
        stack.pop();
    }
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_TILING_N {
        return Err(Error::InvalidParameter(format!(
            "tiling expansion supports n <= {MAX_TILING_N}, got {n}"
        )));
    }
    Ok(())
}

/// All bicolored tilings of length `n`, in the order black mono < red mono
/// < black domino < red domino at each position.
pub fn enumerate_tilings(n: usize) -> Result<Vec<FavardTiling>> {
    guard(n)?;
    let mut out = Vec::new();
    visit(n, 0, &mut Vec::new(), &mut |tiles| {
        out.push(FavardTiling {
            n,
            tiles: tiles.to_vec(),
        })
    });
    Ok(out)
}

fn tiling_sum(cs: &CoeffSystem, n: usize, reversed: bool) -> Result<Poly> {
    guard(n)?;
    if n > 0 {
        cs.require(n - 1)?;
    }
    let mut coeffs = vec![Scalar::zero(); 2 * n + 1];
    visit(n, 0, &mut Vec::new(), &mut |tiles| {
        let w: Scalar = tiles.iter().map(|t| t.weight(cs)).product();
        let e: usize = if reversed {
            tiles.iter().map(Tile::x_power_reversed).sum()
        } else {
            tiles.iter().map(Tile::x_power).sum()
        };
        coeffs[e] += &w;
    });
    Ok(Poly::new(coeffs))
}

/// `P_n = sum_T wt(T) x^{bm + bd}`.
pub fn p_via_tilings(cs: &CoeffSystem, n: usize) -> Result<Poly> {
    tiling_sum(cs, n, false)
}

/// `P*_n = sum_T wt(T) x^{rm + bd + 2 rd}`.
pub fn p_star_via_tilings(cs: &CoeffSystem, n: usize) -> Result<Poly> {
    tiling_sum(cs, n, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_follow_two_two_recurrence() {
        // f_n = 2 f_{n-1} + 2 f_{n-2}
        let counts: Vec<usize> = (0..7).map(|n| enumerate_tilings(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 16, 44, 120, 328]);
        assert!(enumerate_tilings(21).is_err());
    }
}
