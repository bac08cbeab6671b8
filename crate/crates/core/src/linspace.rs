//! Linear spaces: point sets with lines such that every pair of distinct
//! points lies on exactly one line.
//!
//! Points are `0..v`. Lines are stored sorted, and the line list is sorted
//! lexicographically, so two spaces are equal exactly when their line sets
//! are equal.
//!
//! Text format:
//!
//! ```text
//! v 7
//! 0 1 3
//! 0 2 6
//! ...
//! ```
//!
//! The header is `v <n>`; each further non-blank line lists the points of
//! one line separated by spaces. The printer writes lines in canonical
//! order, and parsing then printing a canonical file is the identity.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSpace {
    v: usize,
    lines: Vec<Vec<u32>>,
}

/// `(v, b, k, r)`; `k` and `r` are present only for regular spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceParams {
    pub v: usize,
    pub b: usize,
    pub k: Option<usize>,
    pub r: Option<usize>,
}

impl SpaceParams {
    /// `r(k-1) = v-1`, `bk(k-1) = v(v-1)`, `b >= v` and `v >= k(k-1)+1`.
    /// Vacuously true when `k` or `r` is absent.
    pub fn identities_hold(&self) -> bool {
        let (Some(k), Some(r)) = (self.k, self.r) else {
            return true;
        };
        let (v, b) = (self.v as u128, self.b as u128);
        let (k, r) = (k as u128, r as u128);
        r * (k - 1) == v - 1 && b * k * (k - 1) == v * (v - 1) && b >= v && v > k * (k - 1)
    }
}

impl LinearSpace {
    /// Checks the pair axiom and returns the canonical space.
    pub fn validate(v: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(lines.len());
        for line in lines {
            let mut l = Vec::with_capacity(line.len());
            for x in line {
                if x >= v {
                    return Err(Error::PointOutOfRange { point: x, degree: v });
                }
                l.push(x as u32);
            }
            out.push(l);
        }
        Self::from_lines(v, out)
    }

    pub(crate) fn from_lines(v: usize, mut lines: Vec<Vec<u32>>) -> Result<Self> {
        for l in &mut lines {
            l.sort_unstable();
            l.dedup();
            if l.len() < 2 {
                return Err(Error::ShortLine(l.iter().map(|&x| x as usize).collect()));
            }
            if let Some(&x) = l.last().filter(|&&x| x as usize >= v) {
                return Err(Error::PointOutOfRange {
                    point: x as usize,
                    degree: v,
                });
            }
        }
        lines.sort_unstable();
        check_pairs(v, &lines)?;
        Ok(LinearSpace { v, lines })
    }

    /// The space whose lines are all pairs of points.
    pub fn pairs(v: usize) -> Self {
        let mut lines = Vec::with_capacity(v * v.saturating_sub(1) / 2);
        for a in 0..v as u32 {
            for b in a + 1..v as u32 {
                lines.push(vec![a, b]);
            }
        }
        LinearSpace { v, lines }
    }

    /// One line through all points (no lines when `v < 2`).
    pub fn single_line(v: usize) -> Self {
        let lines = if v >= 2 {
            vec![(0..v as u32).collect()]
        } else {
            Vec::new()
        };
        LinearSpace { v, lines }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    pub fn contains_line(&self, line: &[u32]) -> bool {
        self.lines.binary_search_by(|l| l.as_slice().cmp(line)).is_ok()
    }

    /// For every point, the indices of the lines through it.
    pub fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.v];
        for (i, l) in self.lines.iter().enumerate() {
            for &x in l {
                inc[x as usize].push(i as u32);
            }
        }
        inc
    }

    /// Index of the line through two distinct points.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        if a == b || a >= self.v || b >= self.v {
            return None;
        }
        let (a, b) = (a as u32, b as u32);
        self.lines
            .iter()
            .position(|l| l.binary_search(&a).is_ok() && l.binary_search(&b).is_ok())
    }

    /// At least two lines and every line of size at least three.
    pub fn is_nontrivial(&self) -> bool {
        self.lines.len() >= 2 && self.lines.iter().all(|l| l.len() >= 3)
    }

    pub fn is_regular(&self) -> bool {
        match self.lines.first() {
            Some(first) => self.lines.iter().all(|l| l.len() == first.len()),
            None => false,
        }
    }

    pub fn parameters(&self) -> SpaceParams {
        let (k, r) = if self.is_regular() {
            let counts: Vec<usize> = self.incidence().iter().map(Vec::len).collect();
            let r = counts.first().copied().filter(|&r| counts.iter().all(|&c| c == r));
            (Some(self.lines[0].len()), r)
        } else {
            (None, None)
        };
        SpaceParams {
            v: self.v,
            b: self.b(),
            k,
            r,
        }
    }

    /// Histogram of line sizes, ascending by size.
    pub fn line_size_histogram(&self) -> Vec<(usize, usize)> {
        let mut sizes: Vec<usize> = self.lines.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for s in sizes {
            match out.last_mut() {
                Some((size, count)) if *size == s => *count += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// True when every line of `self` lies inside a line of `coarser`.
    pub fn is_refinement(&self, coarser: &LinearSpace) -> Result<bool> {
        if self.v != coarser.v {
            return Err(Error::DegreeMismatch {
                left: self.v,
                right: coarser.v,
            });
        }
        let inc = coarser.incidence();
        Ok(self.lines.iter().all(|l| {
            inc[l[0] as usize]
                .iter()
                .map(|&i| &coarser.lines[i as usize])
                .find(|c| c.binary_search(&l[1]).is_ok())
                .is_some_and(|c| l.iter().all(|x| c.binary_search(x).is_ok()))
        }))
    }

    /// True when `g` maps every line onto a line.
    pub fn is_automorphism(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.v {
            return Err(Error::DegreeMismatch {
                left: self.v,
                right: g.degree(),
            });
        }
        let set: HashSet<&[u32]> = self.lines.iter().map(Vec::as_slice).collect();
        Ok(self
            .lines
            .iter()
            .all(|l| set.contains(g.apply_to_set(l).as_slice())))
    }

    /// Checks the generators of `group`.
    pub fn group_preserves(&self, group: &PermGroup) -> Result<bool> {
        if group.degree() != self.v {
            return Err(Error::DegreeMismatch {
                left: self.v,
                right: group.degree(),
            });
        }
        let set: HashSet<&[u32]> = self.lines.iter().map(Vec::as_slice).collect();
        Ok(group.generators().iter().all(|g| {
            self.lines
                .iter()
                .all(|l| set.contains(g.apply_to_set(l).as_slice()))
        }))
    }

    /// The lines contained in `points`, relabelled by position in the
    /// sorted `points`.
    pub fn restrict_to(&self, points: &[usize]) -> Result<LinearSpace> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut local = vec![u32::MAX; self.v];
        for (i, &x) in sorted.iter().enumerate() {
            if x >= self.v {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: self.v,
                });
            }
            local[x] = i as u32;
        }
        let lines = self
            .lines
            .iter()
            .filter(|l| l.iter().all(|&x| local[x as usize] != u32::MAX))
            .map(|l| l.iter().map(|&x| local[x as usize]).collect())
            .collect();
        LinearSpace::from_lines(sorted.len(), lines)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("v {}\n", self.v);
        for l in &self.lines {
            let mut first = true;
            for x in l {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{x}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<LinearSpace> {
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = rows.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let mut parts = header.split_whitespace();
        let v = match (parts.next(), parts.next(), parts.next()) {
            (Some("v"), Some(n), None) => n.parse::<usize>().ok(),
            _ => None,
        }
        .ok_or_else(|| Error::Parse {
            line: hline,
            msg: format!("expected `v <n>`, found `{header}`"),
        })?;
        let mut lines = Vec::new();
        for (lineno, row) in rows {
            let line = row
                .split_whitespace()
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?;
            lines.push(line);
        }
        LinearSpace::validate(v, lines)
    }
}

/// Pair-axiom check: for each point, mark the points sharing a line with
/// it. Reports the first bad pair in lexicographic order.
fn check_pairs(v: usize, lines: &[Vec<u32>]) -> Result<()> {
    let mut through = vec![Vec::new(); v];
    for (i, l) in lines.iter().enumerate() {
        for &x in l {
            through[x as usize].push(i);
        }
    }
    let mut mark = vec![usize::MAX; v];
    for (u, on_u) in through.iter().enumerate() {
        let mut doubled: Option<usize> = None;
        for &i in on_u {
            for &w in &lines[i] {
                let w = w as usize;
                if w == u {
                    continue;
                }
                if mark[w] == u {
                    doubled = Some(doubled.map_or(w, |d| d.min(w)));
                }
                mark[w] = u;
            }
        }
        let uncovered = (u + 1..v).find(|&w| mark[w] != u);
        match (doubled, uncovered) {
            (Some(w), Some(x)) if x < w => return Err(Error::UncoveredPair(u, x)),
            (Some(w), _) => return Err(Error::DoublyCoveredPair(u.min(w), u.max(w))),
            (None, Some(x)) => return Err(Error::UncoveredPair(u, x)),
            (None, None) => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Vec<Vec<usize>> {
        (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect()
    }

    #[test]
    fn pairs_space_is_valid_and_trivial() {
        let lines: Vec<Vec<usize>> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| vec![a, b]))
            .collect();
        let s = LinearSpace::validate(4, lines).unwrap();
        assert_eq!(s, LinearSpace::pairs(4));
        assert!(!s.is_nontrivial());
        assert!(s.is_regular());
    }

    #[test]
    fn fano_plane() {
        let s = LinearSpace::validate(7, fano()).unwrap();
        assert!(s.is_nontrivial());
        let p = s.parameters();
        assert_eq!((p.v, p.b, p.k, p.r), (7, 7, Some(3), Some(3)));
        assert!(p.identities_hold());
    }

    #[test]
    fn fano_missing_line_is_uncovered() {
        let mut lines = fano();
        lines.remove(0);
        assert_eq!(
            LinearSpace::validate(7, lines),
            Err(Error::UncoveredPair(0, 1))
        );
    }

    #[test]
    fn repeated_line_is_double_cover() {
        let mut lines = fano();
        lines.push(vec![3, 1, 0]);
        assert_eq!(
            LinearSpace::validate(7, lines),
            Err(Error::DoublyCoveredPair(0, 1))
        );
    }

    #[test]
    fn short_and_out_of_range_lines() {
        assert!(matches!(
            LinearSpace::validate(3, vec![vec![0], vec![0, 1, 2]]),
            Err(Error::ShortLine(_))
        ));
        assert!(matches!(
            LinearSpace::validate(3, vec![vec![0, 5]]),
            Err(Error::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn single_line_is_trivial() {
        let s = LinearSpace::single_line(5);
        assert!(!s.is_nontrivial());
        assert_eq!(s.parameters().k, Some(5));
        assert_eq!(s.parameters().r, Some(1));
    }

    #[test]
    fn refinement_relation() {
        let s = LinearSpace::validate(7, fano()).unwrap();
        assert!(s.is_refinement(&s).unwrap());
        assert!(LinearSpace::pairs(7).is_refinement(&s).unwrap());
        assert!(!s.is_refinement(&LinearSpace::pairs(7)).unwrap());
        assert!(s.is_refinement(&LinearSpace::single_line(7)).unwrap());
        assert!(s.is_refinement(&LinearSpace::pairs(8)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = LinearSpace::validate(7, fano()).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("v 7\n0 1 3\n"));
        let t = LinearSpace::parse(&text).unwrap();
        assert_eq!(t, s);
        assert_eq!(t.to_text(), text);
        assert!(LinearSpace::parse("w 3\n").is_err());
        assert!(LinearSpace::parse("v 3\n0 x\n").is_err());
    }

    #[test]
    fn restriction_relabels() {
        let s = LinearSpace::validate(7, fano()).unwrap();
        let r = s.restrict_to(&[0, 1, 3]).unwrap();
        assert_eq!(r, LinearSpace::single_line(3));
    }

    #[test]
    fn automorphisms_of_fano() {
        let s = LinearSpace::validate(7, fano()).unwrap();
        let shift = Permutation::from_images((0..7).map(|i| (i + 1) % 7)).unwrap();
        let double = Permutation::from_images((0..7).map(|i| (2 * i) % 7)).unwrap();
        let swap = Permutation::from_cycles(7, &[vec![0, 1]]).unwrap();
        assert!(s.is_automorphism(&shift).unwrap());
        assert!(s.is_automorphism(&double).unwrap());
        assert!(!s.is_automorphism(&swap).unwrap());
        let g = PermGroup::new(vec![shift, double]).unwrap();
        assert!(s.group_preserves(&g).unwrap());
    }
}
