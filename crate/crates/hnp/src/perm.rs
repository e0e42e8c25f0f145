//! Permutations on {1..n}: arithmetic, cycle notation parsing and printing.
//!
//! Convention: permutations act on the right, so a product `p * q` means
//! "apply p first, then q", conjugation is `a^x = x^-1 a x` and the
//! commutator is `[x, y] = x^-1 y^-1 x y`.

use std::fmt;

use crate::error::Error;

/// A permutation of {1..n}. Points are stored 0-based internally;
/// all public text I/O is 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Build from 0-based images. Validates bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Perm, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if (im as usize) >= n || seen[im as usize] {
                return Err(Error::Internal("images are not a bijection".into()));
            }
            seen[im as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self * other`: apply `self` first, then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u16;
        }
        Perm { images }
    }

    /// `x^-1 * self * x`.
    pub fn conjugate_by(&self, x: &Perm) -> Perm {
        // (x^-1 a x)(i) = x(a(x^-1(i))); build directly to avoid two temporaries.
        let mut images = vec![0u16; self.images.len()];
        for i in 0..self.images.len() {
            images[x.images[i] as usize] = x.images[self.images[i] as usize];
        }
        Perm { images }
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u16 == im)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Nontrivial cycles, 0-based, each rotated to start at its smallest
    /// point, sorted by smallest moved point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = parts.iter().sum();
        parts.extend(std::iter::repeat(1).take(self.degree() - moved));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// True for even permutations.
    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        transpositions % 2 == 0
    }

    /// Number of orbits on the n points (cycles plus fixed points).
    pub fn orbit_count(&self) -> usize {
        self.cycle_type().parts.len()
    }

    /// Parse cycle notation, e.g. `"(1,2,3)(4,5)"`. Empty (or all-blank)
    /// text denotes the identity. Whitespace between tokens is tolerated.
    pub fn parse(text: &str, degree: usize) -> Result<Perm, Error> {
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut result = Perm::identity(degree);

        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };

        skip_ws(&mut pos);
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(Error::Parse {
                    offset: pos,
                    message: format!("expected '(' but found {:?}", bytes[pos] as char),
                });
            }
            pos += 1;
            let mut points: Vec<usize> = Vec::new();
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == start {
                    return Err(Error::Parse {
                        offset: pos,
                        message: "expected a point (positive integer)".into(),
                    });
                }
                let val: usize = text[start..pos].parse().map_err(|_| Error::Parse {
                    offset: start,
                    message: "integer out of range".into(),
                })?;
                if val == 0 || val > degree {
                    return Err(Error::Parse {
                        offset: start,
                        message: format!("point {} out of range 1..{}", val, degree),
                    });
                }
                if points.contains(&(val - 1)) {
                    return Err(Error::Parse {
                        offset: start,
                        message: format!("point {} repeated within one cycle", val),
                    });
                }
                points.push(val - 1);
                skip_ws(&mut pos);
                if pos >= bytes.len() {
                    return Err(Error::Parse {
                        offset: pos,
                        message: "unterminated cycle".into(),
                    });
                }
                match bytes[pos] {
                    b',' => {
                        pos += 1;
                    }
                    b')' => {
                        pos += 1;
                        break;
                    }
                    c => {
                        return Err(Error::Parse {
                            offset: pos,
                            message: format!("expected ',' or ')' but found {:?}", c as char),
                        })
                    }
                }
            }
            if points.len() < 2 {
                return Err(Error::Parse {
                    offset: pos,
                    message: "a cycle needs at least two points".into(),
                });
            }
            // Apply this cycle after what we already have (left-to-right).
            let mut images: Vec<u16> = (0..degree as u16).collect();
            for w in 0..points.len() {
                images[points[w]] = points[(w + 1) % points.len()] as u16;
            }
            result = result.compose(&Perm { images });
            skip_ws(&mut pos);
        }
        Ok(result)
    }
}

impl fmt::Display for Perm {
    /// Canonical cycle notation: cycles sorted by smallest moved point,
    /// points comma-separated, no whitespace. The identity prints as "".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cyc in self.cycles() {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "id[{}]", self.degree())
        } else {
            write!(f, "{}", self)
        }
    }
}

/// Multiset of cycle lengths (fixed points included as 1s), stored in
/// decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycleType {
    pub parts: Vec<usize>,
}

impl CycleType {
    /// Whether the ambient symmetric-group class with this cycle type splits
    /// into two alternating-group classes: all parts odd and pairwise
    /// distinct.
    pub fn splits_in_alternating(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 1)
            && self.parts.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().map(|&p| p - 1).sum::<usize>() % 2 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Perm {
        Perm::parse(text, n).unwrap()
    }

    #[test]
    fn parse_three_cycle() {
        let g = p("(1,2,3)", 5);
        // 1-based mapping 1->2, 2->3, 3->1, 4->4, 5->5
        assert_eq!(g.apply(0), 1);
        assert_eq!(g.apply(1), 2);
        assert_eq!(g.apply(2), 0);
        assert_eq!(g.apply(3), 3);
        assert_eq!(g.apply(4), 4);
    }

    #[test]
    fn parse_empty_is_identity() {
        assert!(p("", 4).is_identity());
        assert!(p("   ", 4).is_identity());
    }

    #[test]
    fn parse_double_transposition() {
        let g = p("(1,2)(3,4)", 4);
        assert_eq!(g.apply(0), 1);
        assert_eq!(g.apply(2), 3);
        assert_eq!(g.order(), 2);
        assert!(g.is_even());
    }

    #[test]
    fn cycles_compose_left_to_right() {
        // (1,2)(2,3): 1 -> 2 -> 3 under left-to-right application.
        let g = p("(1,2)(2,3)", 3);
        assert_eq!(g.apply(0), 2);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match Perm::parse("(1,9)", 4) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("expected parse error, got {:?}", other),
        }
        match Perm::parse("(1,1)", 4) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(Perm::parse("(1 2)", 4).is_err());
        assert!(Perm::parse("(1)", 4).is_err());
        assert!(Perm::parse("(1,2", 4).is_err());
    }

    #[test]
    fn print_round_trip() {
        for text in ["", "(1,2)", "(1,2,3)(4,5)", "(2,4)(3,5)", "(1,3,5,2,4)"] {
            let g = p(text, 5);
            assert_eq!(Perm::parse(&g.to_string(), 5).unwrap(), g);
        }
        assert_eq!(p("(2,1)", 3).to_string(), "(1,2)");
        assert_eq!(p("(4,5)(1,2,3)", 5).to_string(), "(1,2,3)(4,5)");
    }

    #[test]
    fn compose_inverse_is_identity() {
        let g = p("(1,4,2)(3,5)", 5);
        assert!(g.compose(&g.inverse()).is_identity());
        assert!(g.inverse().compose(&g).is_identity());
    }

    #[test]
    fn conjugation_convention() {
        // Right action: a^x = x^-1 a x. Conjugating (1,2,3) by (2,3)
        // relabels points: 2 <-> 3, so the result is (1,3,2).
        let a = p("(1,2,3)", 4);
        let x = p("(2,3)", 4);
        assert_eq!(a.conjugate_by(&x), p("(1,3,2)", 4));
        assert_eq!(a.conjugate_by(&x), x.inverse().compose(&a).compose(&x));
    }

    #[test]
    fn commutator_convention() {
        let x = p("(1,2)", 4);
        let y = p("(1,3)", 4);
        let c = x.commutator(&y);
        assert_eq!(
            c,
            x.inverse().compose(&y.inverse()).compose(&x).compose(&y)
        );
        assert_eq!(c, p("(1,3,2)", 4));
    }

    #[test]
    fn cycle_type_and_parity() {
        let g = p("(1,2,3)(4,5)", 6);
        assert_eq!(g.cycle_type().parts, vec![3, 2, 1]);
        assert!(!g.is_even());
        assert!(Perm::identity(4).cycle_type().parts == vec![1, 1, 1, 1]);
        // Cycle type is a conjugation invariant.
        let x = p("(1,6,2,4)", 6);
        assert_eq!(g.conjugate_by(&x).cycle_type(), g.cycle_type());
    }

    #[test]
    fn splitting_rule() {
        // Splits: all parts odd and distinct.
        assert!(p("(1,2,3,4,5)", 5).cycle_type().splits_in_alternating());
        assert!(p("(1,2,3)", 4).cycle_type().splits_in_alternating());
        // Repeated part (two fixed points).
        assert!(!p("(1,2,3)", 5).cycle_type().splits_in_alternating());
        // Even part.
        assert!(!p("(1,2)(3,4)", 4).cycle_type().splits_in_alternating());
    }
}
