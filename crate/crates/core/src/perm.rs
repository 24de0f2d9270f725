//! Permutations of the four vertex labels of a tetrahedron.

use std::fmt;
use std::sync::OnceLock;

/// A permutation of `{0,1,2,3}` stored as its image tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its images; panics if `img` is not a bijection.
    pub fn new(img: [u8; 4]) -> Perm4 {
        let mut seen = [false; 4];
        for &v in &img {
            assert!(v < 4 && !seen[v as usize], "not a permutation: {img:?}");
            seen[v as usize] = true;
        }
        Perm4(img)
    }

    /// The transposition exchanging `a` and `b`.
    pub fn swap(a: usize, b: usize) -> Perm4 {
        let mut img = [0, 1, 2, 3];
        img.swap(a, b);
        Perm4(img)
    }

    #[inline]
    pub fn apply(self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Perm4 {
        let mut img = [0u8; 4];
        for (i, slot) in img.iter_mut().enumerate() {
            *slot = self.0[other.0[i] as usize];
        }
        Perm4(img)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i32 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All 24 permutations in lexicographic order of image tuples.
    pub fn ordered_s4() -> &'static [Perm4; 24] {
        static TABLE: OnceLock<[Perm4; 24]> = OnceLock::new();
        TABLE.get_or_init(|| {
            let mut out = [Perm4::IDENTITY; 24];
            let mut k = 0;
            for a in 0..4u8 {
                for b in 0..4u8 {
                    for c in 0..4u8 {
                        for d in 0..4u8 {
                            let img = [a, b, c, d];
                            let mut seen = [false; 4];
                            if img.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true)) {
                                out[k] = Perm4(img);
                                k += 1;
                            }
                        }
                    }
                }
            }
            out
        })
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}
