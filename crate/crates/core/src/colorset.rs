//! Small vertex sets over the target graph, packed into a machine word.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest target graph supported by [`ColorSet`].
pub const MAX_COLORS: usize = 64;

/// A subset of `0..h` for a target graph with `h <= 64` vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// The full set `{0, .., h-1}`.
    pub fn full(h: usize) -> ColorSet {
        assert!(h <= MAX_COLORS);
        if h == MAX_COLORS {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << h) - 1)
        }
    }

    pub fn singleton(c: usize) -> ColorSet {
        ColorSet(1u64 << c)
    }

    #[inline]
    pub fn contains(self, c: usize) -> bool {
        c < MAX_COLORS && self.0 >> c & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, c: usize) {
        self.0 |= 1u64 << c;
    }

    #[inline]
    pub fn remove(&mut self, c: usize) {
        self.0 &= !(1u64 << c);
    }

    #[inline]
    pub fn with(self, c: usize) -> ColorSet {
        ColorSet(self.0 | 1u64 << c)
    }

    #[inline]
    pub fn without(self, c: usize) -> ColorSet {
        ColorSet(self.0 & !(1u64 << c))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: ColorSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> ColorIter {
        ColorIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::ops::BitAnd for ColorSet {
    type Output = ColorSet;
    fn bitand(self, rhs: ColorSet) -> ColorSet {
        ColorSet(self.0 & rhs.0)
    }
}

impl std::ops::BitOr for ColorSet {
    type Output = ColorSet;
    fn bitor(self, rhs: ColorSet) -> ColorSet {
        ColorSet(self.0 | rhs.0)
    }
}

impl std::ops::Sub for ColorSet {
    type Output = ColorSet;
    fn sub(self, rhs: ColorSet) -> ColorSet {
        ColorSet(self.0 & !rhs.0)
    }
}

impl std::ops::BitAndAssign for ColorSet {
    fn bitand_assign(&mut self, rhs: ColorSet) {
        self.0 &= rhs.0;
    }
}

impl std::ops::BitOrAssign for ColorSet {
    fn bitor_assign(&mut self, rhs: ColorSet) {
        self.0 |= rhs.0;
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl From<Vec<usize>> for ColorSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl From<ColorSet> for Vec<usize> {
    fn from(s: ColorSet) -> Self {
        s.to_vec()
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct ColorIter(u64);

impl Iterator for ColorIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ColorIter {}

/// Iterates over every subset of `universe` (including the empty set and
/// `universe` itself) in increasing order of the packed word.
pub fn subsets_of(universe: ColorSet) -> impl Iterator<Item = ColorSet> {
    let u = universe.0;
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == u { None } else { Some((cur.wrapping_sub(u)) & u) };
        Some(ColorSet(cur))
    })
}
