//! Words in the first Grigorchuk group acting on binary strings.
//!
//! Letters are `a, b, c, d` with `a` swapping the first letter and
//! `b = (a, c)`, `c = (a, d)`, `d = (1, b)`. Words compose right to left.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rand::Rng;

pub const A: u8 = 0;
pub const B: u8 = 1;
pub const C: u8 = 2;
pub const D: u8 = 3;

/// Radius of the cached ball used for shortlex normal forms and lifting.
pub const BALL_RADIUS: usize = 20;
const SIG_LEVEL: u32 = 6;

/// A word over `{a,b,c,d}`, always stored reduced: letters alternate between
/// `a` and `{b,c,d}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrigWord(Vec<u8>);

fn push_reduced(out: &mut Vec<u8>, l: u8) {
    match out.last().copied() {
        Some(last) if last == l => {
            out.pop();
        }
        Some(last) if last != A && l != A => {
            out.pop();
            // b,c,d are 1,2,3 and multiply as the Klein four-group.
            out.push(last ^ l);
        }
        _ => out.push(l),
    }
}

/// Section of a single generator at a single letter, as a generator or identity.
fn gen_section(l: u8, x: u8) -> Option<u8> {
    match (l, x) {
        (A, _) => None,
        (B, 0) | (C, 0) => Some(A),
        (B, _) => Some(C),
        (C, _) => Some(D),
        (D, 0) => None,
        (D, _) => Some(B),
        _ => unreachable!("letter out of range"),
    }
}

impl GrigWord {
    pub fn identity() -> Self {
        GrigWord(Vec::new())
    }

    pub fn generator(l: u8) -> Self {
        assert!(l < 4, "generator index out of range");
        GrigWord(vec![l])
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(l < 4, "generator index out of range");
            push_reduced(&mut out, l);
        }
        GrigWord(out)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiply(&self, other: &GrigWord) -> GrigWord {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        GrigWord(out)
    }

    pub fn inverse(&self) -> GrigWord {
        let mut out = Vec::with_capacity(self.0.len());
        for &l in self.0.iter().rev() {
            push_reduced(&mut out, l);
        }
        GrigWord(out)
    }

    /// Whether the element swaps the two level-1 subtrees.
    pub fn swaps(&self) -> bool {
        self.0.iter().filter(|&&l| l == A).count() % 2 == 1
    }

    /// The section at the level-1 vertex `x` and whether the element swaps level 1.
    pub fn section(&self, x: u8) -> (GrigWord, bool) {
        let mut cur = x;
        let mut parts = Vec::with_capacity(self.0.len());
        for &l in self.0.iter().rev() {
            parts.push(gen_section(l, cur));
            if l == A {
                cur ^= 1;
            }
        }
        let mut out = Vec::new();
        for p in parts.into_iter().rev().flatten() {
            push_reduced(&mut out, p);
        }
        (GrigWord(out), self.swaps())
    }

    /// Section along a finite path together with the image of the path.
    pub fn section_path(&self, path: &[u8]) -> (GrigWord, Vec<u8>) {
        let mut g = self.clone();
        let mut image = Vec::with_capacity(path.len());
        for &x in path {
            let (s, swap) = g.section(x);
            image.push(x ^ swap as u8);
            g = s;
        }
        (g, image)
    }

    /// Image of a finite binary string.
    pub fn apply(&self, bits: &[u8]) -> Vec<u8> {
        let mut out = bits.to_vec();
        for &l in self.0.iter().rev() {
            let mut state = Some(l);
            for bit in out.iter_mut() {
                match state {
                    None => break,
                    Some(A) => {
                        *bit ^= 1;
                        break;
                    }
                    Some(s) => state = gen_section(s, *bit),
                }
            }
        }
        out
    }

    /// The word problem: decides whether the element acts trivially.
    pub fn is_identity(&self) -> bool {
        if self.0.is_empty() {
            return true;
        }
        if self.0.len() == 1 || self.swaps() {
            return false;
        }
        // Sections have length at most (|g|+1)/2 < |g|.
        self.section(0).0.is_identity() && self.section(1).0.is_identity()
    }

    pub fn equals(&self, other: &GrigWord) -> bool {
        self == other || self.multiply(&other.inverse()).is_identity()
    }

    /// Action on all strings of length `level`, as a permutation of leaf indices
    /// (first letter most significant).
    pub fn level_perm(&self, level: u32) -> Vec<u16> {
        let n = 1usize << level;
        (0..n)
            .map(|i| {
                let bits: Vec<u8> = (0..level)
                    .map(|k| ((i >> (level - 1 - k)) & 1) as u8)
                    .collect();
                self.apply(&bits)
                    .iter()
                    .fold(0u16, |acc, &b| (acc << 1) | b as u16)
            })
            .collect()
    }

    /// The shortlex-least word for this element if it lies in the cached ball,
    /// otherwise the reduced word itself.
    pub fn canonical(&self) -> GrigWord {
        if self.0.len() <= 1 {
            return self.clone();
        }
        let cache = canon_cache();
        if let Some(c) = cache.lock().expect("cache poisoned").get(self) {
            return c.clone();
        }
        let ball = ball();
        let sig = signature(self);
        let found = ball
            .by_sig
            .get(&sig)
            .and_then(|ids| ids.iter().map(|&i| &ball.words[i]).find(|w| w.equals(self)))
            .cloned()
            .unwrap_or_else(|| self.clone());
        cache
            .lock()
            .expect("cache poisoned")
            .insert(self.clone(), found.clone());
        found
    }

    /// Finds `h` with the given level-1 swap and sections `h|0 = g0`, `h|1 = g1`,
    /// searching the cached ball.
    pub fn lift(swap: bool, g0: &GrigWord, g1: &GrigWord) -> Option<GrigWord> {
        let half = 1usize << (SIG_LEVEL - 1);
        let p0 = g0.level_perm(SIG_LEVEL - 1);
        let p1 = g1.level_perm(SIG_LEVEL - 1);
        let mut sig = vec![0u8; 2 * half];
        for x in 0..2usize {
            let sec = if x == 0 { &p0 } else { &p1 };
            let img = x ^ swap as usize;
            for r in 0..half {
                sig[x * half + r] = (img * half + sec[r] as usize) as u8;
            }
        }
        let ball = ball();
        ball.by_sig
            .get(&sig)?
            .iter()
            .map(|&i| &ball.words[i])
            .find(|w| w.swaps() == swap && w.section(0).0.equals(g0) && w.section(1).0.equals(g1))
            .cloned()
    }

    pub fn random<R: Rng>(rng: &mut R, max_len: usize) -> GrigWord {
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<u8> = (0..len).map(|_| rng.gen_range(0..4u8)).collect();
        GrigWord::from_letters(&letters)
    }

    pub fn parse(s: &str) -> Option<GrigWord> {
        if s == "1" {
            return Some(GrigWord::identity());
        }
        if s.is_empty() {
            return None;
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'a' => Some(A),
                'b' => Some(B),
                'c' => Some(C),
                'd' => Some(D),
                _ => None,
            })
            .collect::<Option<Vec<u8>>>()?;
        Some(GrigWord::from_letters(&letters))
    }
}

impl fmt::Display for GrigWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            write!(f, "{}", (b'a' + l) as char)?;
        }
        Ok(())
    }
}

fn signature(g: &GrigWord) -> Vec<u8> {
    g.level_perm(SIG_LEVEL)
        .into_iter()
        .map(|x| x as u8)
        .collect()
}

struct Ball {
    words: Vec<GrigWord>,
    by_sig: HashMap<Vec<u8>, Vec<usize>>,
}

fn canon_cache() -> &'static Mutex<HashMap<GrigWord, GrigWord>> {
    static CACHE: OnceLock<Mutex<HashMap<GrigWord, GrigWord>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn ball() -> &'static Ball {
    static BALL: OnceLock<Ball> = OnceLock::new();
    BALL.get_or_init(|| {
        let mut words = vec![GrigWord::identity()];
        let mut by_sig: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
        by_sig.entry(signature(&words[0])).or_default().push(0);
        let mut frontier = vec![0usize];
        for _ in 0..BALL_RADIUS {
            let mut next = Vec::new();
            for &i in &frontier {
                for l in 0..4u8 {
                    let w = &words[i];
                    if w.0.last().is_some_and(|&x| x == l || (x != A && l != A)) {
                        continue;
                    }
                    let cand = w.multiply(&GrigWord::generator(l));
                    let sig = signature(&cand);
                    let entry = by_sig.entry(sig).or_default();
                    if entry.iter().any(|&j| words[j].equals(&cand)) {
                        continue;
                    }
                    entry.push(words.len());
                    next.push(words.len());
                    words.push(cand);
                }
            }
            frontier = next;
        }
        Ball { words, by_sig }
    })
}

/// Number of group elements of word length at most [`BALL_RADIUS`].
pub fn ball_size() -> usize {
    ball().words.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GrigWord {
        GrigWord::parse(s).unwrap()
    }

    fn all_strings(depth: u32) -> impl Iterator<Item = Vec<u8>> {
        (0..1u32 << depth).map(move |i| {
            (0..depth)
                .map(|k| ((i >> (depth - 1 - k)) & 1) as u8)
                .collect()
        })
    }

    #[test]
    fn klein_table() {
        assert_eq!(w("b").multiply(&w("c")), w("d"));
        assert_eq!(w("c").multiply(&w("d")), w("b"));
        assert_eq!(w("b").multiply(&w("d")), w("c"));
        assert_eq!(w("a").multiply(&w("a")), w("1"));
        assert_eq!(w("ab").multiply(&w("ba")), w("1"));
        assert_eq!(w("bcd"), w("1"));
    }

    #[test]
    fn relations_hold_by_oracle_and_evaluation() {
        for s in ["aa", "bb", "cc", "dd", "adadadad"] {
            let g = GrigWord::from_letters(&s.bytes().map(|c| c - b'a').collect::<Vec<_>>());
            assert!(g.is_identity(), "{s}");
            for x in all_strings(10) {
                assert_eq!(g.apply(&x), x);
            }
        }
        assert!(!w("a").is_identity());
        assert!(!w("ad").is_identity());
        assert!(!w("adad").is_identity());
    }

    #[test]
    fn generator_sections() {
        assert_eq!(w("b").section(0), (w("a"), false));
        assert_eq!(w("b").section(1), (w("c"), false));
        assert_eq!(w("c").section(1), (w("d"), false));
        assert_eq!(w("d").section(0), (w("1"), false));
        assert_eq!(w("d").section(1), (w("b"), false));
        assert_eq!(w("a").section(0), (w("1"), true));
    }

    #[test]
    fn section_matches_evaluation() {
        let g = w("abacabad");
        for x in all_strings(8) {
            let (s, img) = g.section_path(&x[..3]);
            let mut expect = img.clone();
            expect.extend(s.apply(&x[3..]));
            assert_eq!(g.apply(&x), expect);
        }
    }

    #[test]
    fn canonical_is_shortest() {
        assert_eq!(w("adadada").canonical(), w("d"));
        assert_eq!(w("dadadad").canonical(), w("a"));
        assert!(ball_size() > 1000);
        assert_eq!(w("bcd").canonical(), w("1"));
    }

    #[test]
    fn lift_recovers_generators() {
        assert_eq!(GrigWord::lift(false, &w("a"), &w("c")), Some(w("b")));
        assert_eq!(GrigWord::lift(false, &w("1"), &w("b")), Some(w("d")));
        assert_eq!(GrigWord::lift(true, &w("1"), &w("1")), Some(w("a")));
        assert_eq!(GrigWord::lift(false, &w("b"), &w("1")), Some(w("ada")));
    }
}
