//! Exact branch-and-bound search for the `<_F`-smallest vector at distance
//! `>= d` from a set of codewords.
//!
//! Candidates are enumerated shell by shell (the shell `N` holds the vectors
//! whose top nonzero basis coordinate is `N`), and inside a shell by
//! assigning basis digits from the top index down in ascending order. That
//! visits vectors in strictly increasing rank, so the first leaf that
//! survives is the answer.
//!
//! A partial assignment is pruned when some codeword `c` has
//! `mismatches(c) + undetermined < d`, where `undetermined` counts standard
//! coordinates whose value is not fixed yet. The only coupled pair is
//! `(xi, eta)`: the standard coordinate at `eta` is fixed once both basis
//! digits at `xi` and `eta` are.

use crate::error::{Error, Result};
use crate::field::{DigitString, PrimeModulus};
use crate::vecspace::{Basis, Vector};

/// Codewords in column-major standard coordinates, grown incrementally.
#[derive(Clone, Debug)]
pub(crate) struct CodewordTable {
    limit: usize,
    cols: Vec<Vec<u8>>,
    nonzero: Vec<Vec<u16>>,
    has_zero: bool,
}

impl CodewordTable {
    pub(crate) fn new(limit: usize) -> Self {
        CodewordTable {
            limit,
            cols: vec![Vec::new(); limit],
            nonzero: Vec::new(),
            has_zero: false,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.nonzero.len()
    }

    pub(crate) fn push(&mut self, v: &Vector) -> Result<()> {
        if v.len() > self.limit {
            return Err(Error::SearchBudgetExceeded {
                needed: v.len() - 1,
                limit: self.limit,
            });
        }
        for (i, col) in self.cols.iter_mut().enumerate() {
            col.push(v.coord(i));
        }
        let nz: Vec<u16> = (0..v.len())
            .filter(|&i| v.coord(i) != 0)
            .map(|i| i as u16)
            .collect();
        if nz.is_empty() {
            self.has_zero = true;
        }
        self.nonzero.push(nz);
        Ok(())
    }
}

pub(crate) struct Query<'a> {
    pub p: PrimeModulus,
    pub d: usize,
    pub basis: Basis,
    /// Inclusive lower bound, as a rank (basis digits).
    pub start: &'a DigitString,
    /// Exclusive upper bound, as a rank.
    pub upper: Option<&'a DigitString>,
}

enum Outcome {
    Found,
    Exhausted,
    /// Reached the exclusive upper bound; nothing larger needs visiting.
    Stop,
}

struct Dfs<'a> {
    p: u8,
    d: usize,
    theta: Option<(usize, usize)>,
    table: &'a CodewordTable,
    use_weight: bool,
    top: usize,
    lo: &'a DigitString,
    hi: Option<&'a DigitString>,
    digits: Vec<u8>,
    buffers: Vec<Vec<(u32, u8)>>,
}

impl Dfs<'_> {
    /// Standard coordinates fixed by setting basis digit `i` to `v`.
    fn determined(&self, i: usize, v: u8, out: &mut [(usize, u8); 2]) -> usize {
        match self.theta {
            Some((xi, eta)) if i == xi => {
                out[0] = (xi, v);
                if eta > xi {
                    out[1] = (eta, (self.digits[eta] + v) % self.p);
                    2
                } else {
                    1
                }
            }
            Some((xi, eta)) if i == eta => {
                if xi < eta {
                    0
                } else {
                    let fx = self.digits.get(xi).copied().unwrap_or(0);
                    out[0] = (eta, (v + fx) % self.p);
                    1
                }
            }
            _ => {
                out[0] = (i, v);
                1
            }
        }
    }

    /// Standard coordinates still open once basis digits `i..` are fixed.
    fn undetermined_after(&self, i: usize) -> usize {
        match self.theta {
            Some((xi, eta)) if xi < i && i <= eta => i + 1,
            _ => i,
        }
    }

    fn run(&mut self, level: usize, weight: usize, tight_lo: bool, tight_hi: bool) -> Outcome {
        let p = self.p;
        let (min_digit, max_digit) = if level > self.top {
            (0, 0)
        } else {
            let mut lo = if tight_lo { self.lo.digit(level) } else { 0 };
            if level == self.top {
                lo = lo.max(1);
            }
            let hi = match (tight_hi, self.hi) {
                (true, Some(h)) => h.digit(level),
                _ => p - 1,
            };
            (lo, hi)
        };
        if min_digit > max_digit {
            return Outcome::Exhausted;
        }
        let undetermined = self.undetermined_after(level);
        let mut parent = std::mem::take(&mut self.buffers[level + 1]);
        let mut child = std::mem::take(&mut self.buffers[level]);
        let mut fixed = [(0usize, 0u8); 2];
        let mut outcome = Outcome::Exhausted;

        for v in min_digit..=max_digit {
            self.digits[level] = v;
            let now_lo = tight_lo && v == self.lo.digit(level);
            let now_hi = tight_hi && self.hi.map_or(false, |h| v == h.digit(level));
            let nfixed = self.determined(level, v, &mut fixed);
            let fixed = &fixed[..nfixed];

            let w = weight + fixed.iter().filter(|(_, x)| *x != 0).count();
            if self.use_weight && w + undetermined < self.d {
                continue;
            }

            child.clear();
            let mut feasible = true;
            for &(c, m) in parent.iter() {
                let mut m = m as usize;
                for &(pos, x) in fixed {
                    if self.table.cols[pos][c as usize] != x {
                        m += 1;
                    }
                }
                if m >= self.d {
                    continue;
                }
                if m + undetermined < self.d {
                    feasible = false;
                    break;
                }
                child.push((c, m as u8));
            }
            if !feasible {
                continue;
            }

            if level == 0 {
                if now_hi {
                    outcome = Outcome::Stop;
                } else {
                    outcome = Outcome::Found;
                }
                break;
            }
            self.buffers[level] = std::mem::take(&mut child);
            let r = self.run(level - 1, w, now_lo, now_hi);
            child = std::mem::take(&mut self.buffers[level]);
            match r {
                Outcome::Exhausted => {}
                other => {
                    outcome = other;
                    break;
                }
            }
        }
        if !matches!(outcome, Outcome::Found) {
            self.digits[level] = 0;
        }
        std::mem::swap(&mut parent, &mut self.buffers[level + 1]);
        self.buffers[level] = child;
        outcome
    }
}

/// Finds the smallest rank `r` with `start <= r < upper` whose vector is at
/// distance `>= d` from every word of `table`. Returns the basis digits of
/// the answer, or `None` if the upper bound was reached first.
pub(crate) fn find_next(table: &CodewordTable, q: &Query<'_>) -> Result<Option<DigitString>> {
    let limit = table.limit;
    let theta = q.basis.theta();
    let d = q.d;

    if q.start.is_zero() {
        if q.upper.map_or(false, |u| u.is_zero()) {
            return Ok(None);
        }
        let zero_ok = table.nonzero.iter().all(|nz| nz.len() >= d);
        if zero_ok {
            return Ok(Some(DigitString::zero()));
        }
    }
    let first_top = q.start.len().saturating_sub(1);

    let mut top = first_top;
    loop {
        if let Some(u) = q.upper {
            if u.is_zero() || top > u.len() - 1 {
                return Ok(None);
            }
        }
        let height = match theta {
            Some((xi, eta)) if xi <= top && eta > top => eta,
            _ => top,
        };
        if height >= limit {
            return Err(Error::SearchBudgetExceeded { needed: height, limit });
        }

        let use_weight = table.has_zero;
        let root_open = height + 1;
        let mut root: Vec<(u32, u8)> = Vec::with_capacity(table.len());
        let mut feasible = true;
        for (c, nz) in table.nonzero.iter().enumerate() {
            if use_weight && nz.is_empty() {
                continue;
            }
            let m = nz.iter().filter(|&&i| i as usize > height).count();
            if m >= d {
                continue;
            }
            if m + root_open < d {
                feasible = false;
                break;
            }
            root.push((c as u32, m as u8));
        }
        if use_weight && root_open < d {
            feasible = false;
        }

        if feasible {
            let lo_shell = top == first_top && !q.start.is_zero();
            let mut buffers: Vec<Vec<(u32, u8)>> = vec![Vec::new(); height + 2];
            buffers[height + 1] = root;
            let mut dfs = Dfs {
                p: q.p.get(),
                d,
                theta,
                table,
                use_weight,
                top,
                lo: q.start,
                hi: q.upper,
                digits: vec![0; height + 1],
                buffers,
            };
            let tight_hi = q.upper.map_or(false, |u| u.len() - 1 == top);
            match dfs.run(height, 0, lo_shell, tight_hi) {
                Outcome::Found => {
                    return Ok(Some(DigitString::from_digits(dfs.digits)));
                }
                Outcome::Stop => return Ok(None),
                Outcome::Exhausted => {}
            }
        }
        top += 1;
    }
}
