//! Suffix-automaton attractor check.
//!
//! Each automaton state is a class of factors sharing one set of end
//! positions; its factors have lengths `len(link)+1 ..= len`. An occurrence
//! of length `L` ending at index `e` crosses the candidate set iff the
//! nearest candidate position at or before `e` is at distance `< L`. So a
//! class is described by the minimum of that distance over its end
//! positions, which propagates up the suffix-link tree in one pass.

const NONE: u32 = u32::MAX;
const FAR: u64 = u64::MAX;

#[derive(Debug, Clone)]
pub(crate) struct SuffixAutomaton {
    sigma: usize,
    len: Vec<u32>,
    link: Vec<u32>,
    next: Vec<u32>,
    /// End index of the first occurrence of the class.
    first_end: Vec<u32>,
    /// Prefix end index that created the state, `NONE` for clones.
    origin: Vec<u32>,
    last: u32,
    size: usize,
}

/// Outcome of one coverage pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Coverage {
    pub distinct: u64,
    pub uncovered: u64,
    /// `(length, start)` of the shortest uncovered factor, leftmost first
    /// occurrence among equals.
    pub witness: Option<(usize, usize)>,
}

impl SuffixAutomaton {
    pub fn new(sigma: usize) -> Self {
        let mut sam = SuffixAutomaton {
            sigma: sigma.max(1),
            len: Vec::new(),
            link: Vec::new(),
            next: Vec::new(),
            first_end: Vec::new(),
            origin: Vec::new(),
            last: 0,
            size: 0,
        };
        sam.add_state(0, NONE, NONE, NONE);
        sam
    }

    pub fn with_word(sigma: usize, word: &[u32]) -> Self {
        let mut sam = SuffixAutomaton::new(sigma);
        sam.len.reserve(2 * word.len());
        for &c in word {
            sam.push(c);
        }
        sam
    }

    pub fn word_len(&self) -> usize {
        self.size
    }

    fn add_state(&mut self, len: u32, link: u32, first_end: u32, origin: u32) -> u32 {
        let id = self.len.len() as u32;
        self.len.push(len);
        self.link.push(link);
        self.first_end.push(first_end);
        self.origin.push(origin);
        self.next.extend(std::iter::repeat_n(NONE, self.sigma));
        id
    }

    #[inline]
    fn go(&self, state: u32, c: u32) -> u32 {
        self.next[state as usize * self.sigma + c as usize]
    }

    #[inline]
    fn set(&mut self, state: u32, c: u32, to: u32) {
        self.next[state as usize * self.sigma + c as usize] = to;
    }

    /// Appends one letter (`c < sigma`).
    pub fn push(&mut self, c: u32) {
        assert!((c as usize) < self.sigma, "letter {c} outside alphabet");
        let pos = self.size as u32;
        self.size += 1;
        let cur = self.add_state(self.len[self.last as usize] + 1, NONE, pos, pos);
        let mut p = self.last;
        while p != NONE && self.go(p, c) == NONE {
            self.set(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.go(p, c);
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone = self.add_state(
                    self.len[p as usize] + 1,
                    self.link[q as usize],
                    self.first_end[q as usize],
                    NONE,
                );
                let (src, dst) = (q as usize * self.sigma, clone as usize * self.sigma);
                self.next.copy_within(src..src + self.sigma, dst);
                while p != NONE && self.go(p, c) == q {
                    self.set(p, c, clone);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        self.last = cur;
    }

    /// Coverage of all distinct non-empty factors by `sorted_gamma`
    /// (ascending, in range).
    pub fn coverage(&self, sorted_gamma: &[usize]) -> Coverage {
        let n = self.size;
        // distance from each end index back to the nearest candidate
        let mut dist = vec![FAR; n];
        let mut g = sorted_gamma.iter().peekable();
        let mut prev: Option<usize> = None;
        for (e, d) in dist.iter_mut().enumerate() {
            while let Some(&&p) = g.peek() {
                if p <= e {
                    prev = Some(p);
                    g.next();
                } else {
                    break;
                }
            }
            if let Some(p) = prev {
                *d = (e - p) as u64;
            }
        }

        let states = self.len.len();
        let mut best = vec![FAR; states];
        for s in 1..states {
            let o = self.origin[s];
            if o != NONE {
                best[s] = dist[o as usize];
            }
        }

        // counting sort by len, then fold children into parents
        let mut bucket = vec![0u32; n + 2];
        for &l in &self.len {
            bucket[l as usize + 1] += 1;
        }
        for i in 1..bucket.len() {
            bucket[i] += bucket[i - 1];
        }
        let mut order = vec![0u32; states];
        for s in 0..states {
            let l = self.len[s] as usize;
            order[bucket[l] as usize] = s as u32;
            bucket[l] += 1;
        }
        for &s in order.iter().rev() {
            let s = s as usize;
            let parent = self.link[s];
            if parent != NONE && best[s] < best[parent as usize] {
                best[parent as usize] = best[s];
            }
        }

        let mut distinct = 0u64;
        let mut uncovered = 0u64;
        let mut witness: Option<(usize, usize)> = None;
        for s in 1..states {
            let min_len = self.len[self.link[s] as usize] as u64 + 1;
            let max_len = self.len[s] as u64;
            distinct += max_len - min_len + 1;
            // lengths L with L <= best stay uncovered
            let top = max_len.min(best[s]);
            if top >= min_len {
                uncovered += top - min_len + 1;
                let l = min_len as usize;
                let start = self.first_end[s] as usize + 1 - l;
                if witness.is_none_or(|w| (l, start) < w) {
                    witness = Some((l, start));
                }
            }
        }
        Coverage {
            distinct,
            uncovered,
            witness,
        }
    }
}
