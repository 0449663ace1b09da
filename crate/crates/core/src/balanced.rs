//! Right-angled Artin and right-angled Coxeter groups presented by simple
//! graphs (vertices are generators, edges are commuting pairs; the Coxeter
//! kind adds s² = 1).
//!
//! All relations of such presentations are balanced, so the cancelation
//! length of a word does not depend on the representing word and computes
//! the biinvariant norm of the element. There is no known polynomial
//! algorithm here; [`GraphPresentation::cancelation_length`] runs an
//! iterative-deepening search over deletion counts with memoization and
//! abelianization pruning, guarded by word-length and node budgets.

use crate::words::{Alphabet, Letter, Sign, Word};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BalancedError {
    #[error("invalid graph presentation: {0}")]
    InvalidGraph(String),
    #[error("word uses a different alphabet than the presentation")]
    AlphabetMismatch,
    #[error("word of length {len} exceeds the search guard ({max}); use cancelation_length_with_budget to override")]
    WordTooLong { len: usize, max: usize },
    #[error("deletion search exceeded the node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("word uses generator {letter:?} outside the chosen subset")]
    LettersOutsideSubset { letter: char },
}

/// Length guard for the exponential deletion search.
pub const CANCELATION_MAX_LEN: usize = 24;
/// Default node budget for the deletion search.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Artin,
    Coxeter,
}

/// A right-angled Artin or Coxeter group given by a finite simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPresentation {
    alphabet: Alphabet,
    // symmetric adjacency matrix, row-major, no loops
    adjacency: Vec<bool>,
    kind: GroupKind,
}

#[derive(Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
    kind: String,
}

impl GraphPresentation {
    pub fn new(
        names: &str,
        edges: &[(char, char)],
        kind: GroupKind,
    ) -> Result<Self, BalancedError> {
        let alphabet =
            Alphabet::new(names).map_err(|e| BalancedError::InvalidGraph(e.to_string()))?;
        let rank = alphabet.rank();
        let mut adjacency = vec![false; rank * rank];
        for &(u, v) in edges {
            let i = alphabet
                .index_of(u)
                .ok_or_else(|| BalancedError::InvalidGraph(format!("unknown vertex {u:?}")))?;
            let j = alphabet
                .index_of(v)
                .ok_or_else(|| BalancedError::InvalidGraph(format!("unknown vertex {v:?}")))?;
            if i == j {
                return Err(BalancedError::InvalidGraph(format!("loop at vertex {u:?}")));
            }
            if adjacency[i * rank + j] {
                return Err(BalancedError::InvalidGraph(format!(
                    "duplicate edge {u:?}-{v:?}"
                )));
            }
            adjacency[i * rank + j] = true;
            adjacency[j * rank + i] = true;
        }
        Ok(GraphPresentation {
            alphabet,
            adjacency,
            kind,
        })
    }

    /// Parse the text format:
    /// ```text
    /// vertices: a b c
    /// edges: a-b b-c
    /// ```
    /// The `edges:` line may be empty or absent.
    pub fn parse_text(text: &str, kind: GroupKind) -> Result<Self, BalancedError> {
        let mut names = String::new();
        let mut edges: Vec<(char, char)> = Vec::new();
        let mut saw_vertices = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                for tok in rest.split_whitespace() {
                    let mut chars = tok.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => names.push(c),
                        _ => {
                            return Err(BalancedError::InvalidGraph(format!(
                                "vertex name {tok:?} is not a single character"
                            )))
                        }
                    }
                }
                saw_vertices = true;
            } else if let Some(rest) = line.strip_prefix("edges:") {
                for tok in rest.split_whitespace() {
                    let parts: Vec<char> = tok.chars().collect();
                    match parts.as_slice() {
                        [u, '-', v] => edges.push((*u, *v)),
                        _ => {
                            return Err(BalancedError::InvalidGraph(format!(
                                "edge {tok:?} is not of the form u-v"
                            )))
                        }
                    }
                }
            } else {
                return Err(BalancedError::InvalidGraph(format!(
                    "unrecognized line {line:?}"
                )));
            }
        }
        if !saw_vertices {
            return Err(BalancedError::InvalidGraph("missing vertices: line".into()));
        }
        Self::new(&names, &edges, kind)
    }

    /// Parse the JSON form `{"vertices": ["a","b"], "edges": [["a","b"]],
    /// "kind": "artin"}`.
    pub fn parse_json(text: &str) -> Result<Self, BalancedError> {
        let parsed: GraphJson =
            serde_json::from_str(text).map_err(|e| BalancedError::InvalidGraph(e.to_string()))?;
        let kind = match parsed.kind.to_ascii_lowercase().as_str() {
            "artin" => GroupKind::Artin,
            "coxeter" => GroupKind::Coxeter,
            other => {
                return Err(BalancedError::InvalidGraph(format!(
                    "kind must be \"artin\" or \"coxeter\", got {other:?}"
                )))
            }
        };
        let mut names = String::new();
        for v in &parsed.vertices {
            let mut chars = v.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => names.push(c),
                _ => {
                    return Err(BalancedError::InvalidGraph(format!(
                        "vertex name {v:?} is not a single character"
                    )))
                }
            }
        }
        let mut edges = Vec::new();
        for [u, v] in &parsed.edges {
            let cu = u.chars().next();
            let cv = v.chars().next();
            match (cu, u.len(), cv, v.len()) {
                (Some(cu), 1, Some(cv), 1) => edges.push((cu, cv)),
                _ => {
                    return Err(BalancedError::InvalidGraph(format!(
                        "edge endpoint {u:?}-{v:?} is not a single character"
                    )))
                }
            }
        }
        Self::new(&names, &edges, kind)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.rank() + j]
    }

    /// The presentation induced on a subset of vertices (a full subgraph),
    /// keeping the original vertex order.
    pub fn induced_subgraph(&self, sub: &[char]) -> Result<GraphPresentation, BalancedError> {
        let mut indices = Vec::with_capacity(sub.len());
        for &c in sub {
            let i = self
                .alphabet
                .index_of(c)
                .ok_or_else(|| BalancedError::InvalidGraph(format!("unknown vertex {c:?}")))?;
            if indices.contains(&i) {
                return Err(BalancedError::InvalidGraph(format!(
                    "duplicate vertex {c:?} in subset"
                )));
            }
            indices.push(i);
        }
        indices.sort_unstable();
        let names: String = indices.iter().map(|&i| self.alphabet.name(i)).collect();
        let mut edges = Vec::new();
        for (a, &i) in indices.iter().enumerate() {
            for &j in &indices[a + 1..] {
                if self.commutes(i, j) {
                    edges.push((self.alphabet.name(i), self.alphabet.name(j)));
                }
            }
        }
        GraphPresentation::new(&names, &edges, self.kind)
    }

    /// Validate a word against this presentation and normalize letter
    /// signs: Coxeter generators are involutions, so inverse letters are
    /// mapped to positive on ingestion.
    pub fn ingest(&self, w: &Word) -> Result<Word, BalancedError> {
        if w.alphabet() != &self.alphabet {
            return Err(BalancedError::AlphabetMismatch);
        }
        match self.kind {
            GroupKind::Artin => Ok(w.clone()),
            GroupKind::Coxeter => Ok(Word::from_letters(
                &self.alphabet,
                w.letters()
                    .iter()
                    .map(|l| Letter::new(l.gen(), Sign::Pos))
                    .collect(),
            )),
        }
    }

    fn cancels(&self, top: Letter, l: Letter) -> bool {
        match self.kind {
            GroupKind::Artin => top.is_inverse_of(l),
            GroupKind::Coxeter => top.gen() == l.gen(),
        }
    }

    /// Append one letter to a reduced buffer, cancelling against the
    /// nearest partner that can be commuted to the end. Keeps the buffer
    /// reduced: a letter blocks when it shares the generator or does not
    /// commute.
    fn push_reduced(&self, buf: &mut Vec<Letter>, l: Letter) {
        for j in (0..buf.len()).rev() {
            let y = buf[j];
            if self.cancels(y, l) {
                buf.remove(j);
                return;
            }
            if y.gen() == l.gen() || !self.commutes(y.gen(), l.gen()) {
                break;
            }
        }
        buf.push(l);
    }

    fn reduce(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut buf = Vec::with_capacity(letters.len());
        for &l in letters {
            self.push_reduced(&mut buf, l);
        }
        buf
    }

    /// Lexicographically least linearization of a reduced word's
    /// commutation class: repeatedly emit the smallest letter that can be
    /// commuted to the front.
    fn lex_least(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut remaining = letters.to_vec();
        let mut out = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let mut best = 0usize;
            for idx in 1..remaining.len() {
                let l = remaining[idx];
                if l >= remaining[best] {
                    continue;
                }
                let available = remaining[..idx]
                    .iter()
                    .all(|&y| y.gen() != l.gen() && self.commutes(y.gen(), l.gen()));
                if available {
                    best = idx;
                }
            }
            out.push(remaining.remove(best));
        }
        out
    }

    /// The canonical representative of the element `w` represents: the
    /// shortlex-least geodesic. Two words represent the same element iff
    /// their normal forms are identical letter sequences.
    pub fn normal_form(&self, w: &Word) -> Result<Word, BalancedError> {
        let w = self.ingest(w)?;
        let reduced = self.reduce(w.letters());
        Ok(Word::from_letters(&self.alphabet, self.lex_least(&reduced)))
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool, BalancedError> {
        let w = self.ingest(w)?;
        Ok(self.reduce(w.letters()).is_empty())
    }

    /// Minimal number of letters to delete from `w` so that the remainder
    /// is trivial in the group. Since all relations here are balanced this
    /// is independent of the representing word and equals the biinvariant
    /// norm of the element.
    pub fn cancelation_length(&self, w: &Word) -> Result<usize, BalancedError> {
        let w = self.ingest(w)?;
        if w.len() > CANCELATION_MAX_LEN {
            return Err(BalancedError::WordTooLong {
                len: w.len(),
                max: CANCELATION_MAX_LEN,
            });
        }
        self.search(&w, DEFAULT_NODE_BUDGET)
    }

    /// As [`cancelation_length`](Self::cancelation_length) but with an
    /// explicit node budget and no word-length guard.
    pub fn cancelation_length_with_budget(
        &self,
        w: &Word,
        max_nodes: u64,
    ) -> Result<usize, BalancedError> {
        let w = self.ingest(w)?;
        self.search(&w, max_nodes)
    }

    fn search(&self, w: &Word, max_nodes: u64) -> Result<usize, BalancedError> {
        let mut search = DeletionSearch::new(self, w.letters(), max_nodes);
        let n = w.len();
        let mut k = search.root_lower_bound();
        loop {
            debug_assert!(k <= n);
            match search.run(k) {
                Some(true) => return Ok(k),
                Some(false) => k += 2,
                None => {
                    return Err(BalancedError::BudgetExceeded { budget: max_nodes });
                }
            }
        }
    }

    /// Apply `steps` random element-preserving moves: swapping adjacent
    /// commuting letters, deleting an adjacent cancelling pair, or
    /// inserting one (an inverse pair for Artin, a repeated generator for
    /// Coxeter). Insertions stop once the word grows ten letters past its
    /// starting length so orbits stay within search range.
    pub fn random_balanced_rewrite(
        &self,
        w: &Word,
        steps: usize,
        seed: u64,
    ) -> Result<Word, BalancedError> {
        let w = self.ingest(w)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut letters: Vec<Letter> = w.letters().to_vec();
        let cap = (w.len() + 10).max(16);
        for _ in 0..steps {
            self.random_move(&mut letters, cap, &mut rng);
        }
        Ok(Word::from_letters(&self.alphabet, letters))
    }

    fn random_move(&self, letters: &mut Vec<Letter>, cap: usize, rng: &mut ChaCha8Rng) {
        for _ in 0..12 {
            match rng.gen_range(0..3u8) {
                // swap adjacent commuting letters
                0 => {
                    let sites: Vec<usize> = (0..letters.len().saturating_sub(1))
                        .filter(|&i| {
                            let (x, y) = (letters[i], letters[i + 1]);
                            x.gen() != y.gen() && self.commutes(x.gen(), y.gen())
                        })
                        .collect();
                    if let Some(&i) = pick(&sites, rng) {
                        letters.swap(i, i + 1);
                        return;
                    }
                }
                // delete an adjacent cancelling pair
                1 => {
                    let sites: Vec<usize> = (0..letters.len().saturating_sub(1))
                        .filter(|&i| self.cancels(letters[i], letters[i + 1]))
                        .collect();
                    if let Some(&i) = pick(&sites, rng) {
                        letters.drain(i..i + 2);
                        return;
                    }
                }
                // insert a cancelling pair
                _ => {
                    if letters.len() + 2 > cap {
                        continue;
                    }
                    let at = rng.gen_range(0..=letters.len());
                    let gen = rng.gen_range(0..self.rank());
                    let pair = match self.kind {
                        GroupKind::Coxeter => {
                            [Letter::new(gen, Sign::Pos), Letter::new(gen, Sign::Pos)]
                        }
                        GroupKind::Artin => {
                            let first = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                            [Letter::new(gen, first), Letter::new(gen, first.flip())]
                        }
                    };
                    letters.splice(at..at, pair);
                    return;
                }
            }
        }
    }

    /// Cancelation length of `w` computed in the ambient presentation and
    /// in the parabolic (full-subgraph) presentation on `sub`; the two are
    /// always equal because parabolic inclusions are isometric.
    pub fn parabolic_norm_check(
        &self,
        sub: &[char],
        w: &Word,
    ) -> Result<(usize, usize), BalancedError> {
        let ingested = self.ingest(w)?;
        let sub_pres = self.induced_subgraph(sub)?;
        for l in ingested.letters() {
            let name = self.alphabet.name(l.gen());
            if sub_pres.alphabet.index_of(name).is_none() {
                return Err(BalancedError::LettersOutsideSubset { letter: name });
            }
        }
        let translated = Word::from_letters(
            sub_pres.alphabet(),
            ingested
                .letters()
                .iter()
                .map(|l| {
                    let name = self.alphabet.name(l.gen());
                    Letter::new(sub_pres.alphabet.index_of(name).unwrap(), l.sign())
                })
                .collect(),
        );
        let ambient = self.cancelation_length(&ingested)?;
        let parabolic = sub_pres.cancelation_length(&translated)?;
        Ok((ambient, parabolic))
    }
}

fn pick<'a, T>(items: &'a [T], rng: &mut ChaCha8Rng) -> Option<&'a T> {
    if items.is_empty() {
        None
    } else {
        Some(&items[rng.gen_range(0..items.len())])
    }
}

/// Iterative-deepening DFS over which letters to delete. State is the
/// reduced product of the kept prefix; branches are pruned against
/// per-generator deletion demands derived from suffix exponent counts
/// (signed sums for Artin, mod-2 parities for Coxeter).
struct DeletionSearch<'a> {
    pres: &'a GraphPresentation,
    letters: &'a [Letter],
    // suffix_exp[i][g]: signed exponent sum of letters[i..] for generator g
    suffix_exp: Vec<Vec<i32>>,
    // suffix_count[i][g]: occurrences of generator g in letters[i..]
    suffix_count: Vec<Vec<u32>>,
    nodes_left: u64,
    pile: Vec<Letter>,
    exp: Vec<i32>,
    memo: HashMap<(u32, Vec<Letter>), u32>,
    bound: usize,
}

impl<'a> DeletionSearch<'a> {
    fn new(pres: &'a GraphPresentation, letters: &'a [Letter], max_nodes: u64) -> Self {
        let rank = pres.rank();
        let n = letters.len();
        let mut suffix_exp = vec![vec![0i32; rank]; n + 1];
        let mut suffix_count = vec![vec![0u32; rank]; n + 1];
        for i in (0..n).rev() {
            suffix_exp[i] = suffix_exp[i + 1].clone();
            suffix_count[i] = suffix_count[i + 1].clone();
            let l = letters[i];
            suffix_exp[i][l.gen()] += match l.sign() {
                Sign::Pos => 1,
                Sign::Neg => -1,
            };
            suffix_count[i][l.gen()] += 1;
        }
        DeletionSearch {
            pres,
            letters,
            suffix_exp,
            suffix_count,
            nodes_left: max_nodes,
            pile: Vec::new(),
            exp: vec![0; rank],
            memo: HashMap::new(),
            bound: 0,
        }
    }

    fn root_lower_bound(&self) -> usize {
        self.demand(0).unwrap_or(self.letters.len())
    }

    /// Minimal further deletions forced by abelianization: the letters
    /// kept from the suffix must contribute exponent -exp(e) for every
    /// generator. `None` when no kept subset can achieve that.
    fn demand(&self, i: usize) -> Option<usize> {
        let mut total = 0usize;
        for g in 0..self.pres.rank() {
            let need = match self.pres.kind {
                GroupKind::Artin => (self.suffix_exp[i][g] + self.exp[g]).unsigned_abs() as usize,
                GroupKind::Coxeter => {
                    ((self.suffix_count[i][g] as i32 + self.exp[g]) % 2).unsigned_abs() as usize
                }
            };
            if need > self.suffix_count[i][g] as usize {
                return None;
            }
            total += need;
        }
        Some(total)
    }

    fn run(&mut self, bound: usize) -> Option<bool> {
        self.bound = bound;
        self.memo.clear();
        debug_assert!(self.pile.is_empty());
        self.dfs(0, 0)
    }

    // None = node budget exhausted
    fn dfs(&mut self, i: usize, deleted: usize) -> Option<bool> {
        if self.nodes_left == 0 {
            return None;
        }
        self.nodes_left -= 1;

        if i == self.letters.len() {
            return Some(self.pile.is_empty());
        }
        match self.demand(i) {
            None => return Some(false),
            Some(t) => {
                if deleted + t > self.bound {
                    return Some(false);
                }
            }
        }
        // the kept suffix must at least spell out the inverse of the pile
        if self.pile.len() > self.letters.len() - i {
            return Some(false);
        }
        let key = (i as u32, self.pile.clone());
        match self.memo.get(&key) {
            Some(&d) if d as usize <= deleted => return Some(false),
            _ => {
                self.memo.insert(key, deleted as u32);
            }
        }

        // keep letters[i]
        let l = self.letters[i];
        let undo = self.apply(l);
        let kept = self.dfs(i + 1, deleted)?;
        self.unapply(l, undo);
        if kept {
            return Some(true);
        }
        // delete letters[i]
        if deleted < self.bound {
            if self.dfs(i + 1, deleted + 1)? {
                return Some(true);
            }
        }
        Some(false)
    }

    fn apply(&mut self, l: Letter) -> Option<(usize, Letter)> {
        self.exp[l.gen()] += match (self.pres.kind, l.sign()) {
            (GroupKind::Coxeter, _) | (_, Sign::Pos) => 1,
            (_, Sign::Neg) => -1,
        };
        for j in (0..self.pile.len()).rev() {
            let y = self.pile[j];
            if self.pres.cancels(y, l) {
                self.pile.remove(j);
                return Some((j, y));
            }
            if y.gen() == l.gen() || !self.pres.commutes(y.gen(), l.gen()) {
                break;
            }
        }
        self.pile.push(l);
        None
    }

    fn unapply(&mut self, l: Letter, undo: Option<(usize, Letter)>) {
        self.exp[l.gen()] -= match (self.pres.kind, l.sign()) {
            (GroupKind::Coxeter, _) | (_, Sign::Pos) => 1,
            (_, Sign::Neg) => -1,
        };
        match undo {
            Some((j, y)) => self.pile.insert(j, y),
            None => {
                self.pile.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freenorm::cancelation_norm;

    fn artin(names: &str, edges: &[(char, char)]) -> GraphPresentation {
        GraphPresentation::new(names, edges, GroupKind::Artin).unwrap()
    }

    fn coxeter(names: &str, edges: &[(char, char)]) -> GraphPresentation {
        GraphPresentation::new(names, edges, GroupKind::Coxeter).unwrap()
    }

    fn word(p: &GraphPresentation, text: &str) -> Word {
        Word::parse(text, p.alphabet()).unwrap()
    }

    #[test]
    fn graph_validation() {
        assert!(GraphPresentation::new("ab", &[('a', 'a')], GroupKind::Artin).is_err());
        assert!(GraphPresentation::new("ab", &[('a', 'b'), ('b', 'a')], GroupKind::Artin).is_err());
        assert!(GraphPresentation::new("ab", &[('a', 'c')], GroupKind::Artin).is_err());
    }

    #[test]
    fn parse_text_format() {
        let p = GraphPresentation::parse_text("vertices: a b c\nedges: a-b b-c\n", GroupKind::Artin)
            .unwrap();
        assert_eq!(p.rank(), 3);
        assert!(p.commutes(0, 1));
        assert!(p.commutes(1, 2));
        assert!(!p.commutes(0, 2));

        let edgeless =
            GraphPresentation::parse_text("vertices: a b\nedges:\n", GroupKind::Coxeter).unwrap();
        assert!(!edgeless.commutes(0, 1));
        assert_eq!(
            edgeless,
            GraphPresentation::parse_text("vertices: a b", GroupKind::Coxeter).unwrap()
        );
    }

    #[test]
    fn parse_json_format() {
        let p = GraphPresentation::parse_json(
            r#"{"vertices": ["a", "b", "c"], "edges": [["a","b"], ["b","c"]], "kind": "artin"}"#,
        )
        .unwrap();
        assert_eq!(p, artin("abc", &[('a', 'b'), ('b', 'c')]));
        assert!(GraphPresentation::parse_json(r#"{"vertices":["a"],"edges":[],"kind":"weyl"}"#)
            .is_err());
    }

    #[test]
    fn normal_form_examples() {
        let p = artin("ab", &[('a', 'b')]);
        assert_eq!(p.normal_form(&word(&p, "ba")).unwrap(), word(&p, "ab"));
        assert!(p.is_trivial(&word(&p, "abAB")).unwrap());

        let free = artin("ab", &[]);
        assert!(!free.is_trivial(&word(&free, "abAB")).unwrap());

        let c = coxeter("s", &[]);
        assert!(c.is_trivial(&word(&c, "ss")).unwrap());

        let st = coxeter("st", &[('s', 't')]);
        assert!(st.is_trivial(&word(&st, "stst")).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent_and_canonical() {
        let p = artin("abc", &[('a', 'b'), ('b', 'c')]);
        for text in ["cba", "abcABC", "bAcaB", "ccbaBC"] {
            let w = word(&p, text);
            let nf = p.normal_form(&w).unwrap();
            assert_eq!(p.normal_form(&nf).unwrap(), nf);
            // rewriting never changes the normal form
            for seed in 0..5 {
                let moved = p.random_balanced_rewrite(&w, 12, seed).unwrap();
                assert_eq!(p.normal_form(&moved).unwrap(), nf, "word {text}, seed {seed}");
            }
        }
    }

    #[test]
    fn coxeter_signs_are_normalized() {
        let c = coxeter("st", &[]);
        assert_eq!(c.normal_form(&word(&c, "S")).unwrap(), word(&c, "s"));
        assert!(c.is_trivial(&word(&c, "sS")).unwrap());
    }

    #[test]
    fn cancelation_length_examples() {
        let p = artin("ab", &[('a', 'b')]);
        assert_eq!(p.cancelation_length(&word(&p, "ab")).unwrap(), 2);

        let path = artin("abc", &[('a', 'b'), ('b', 'c')]);
        assert_eq!(path.cancelation_length(&word(&path, "acAC")).unwrap(), 2);

        let c = coxeter("st", &[]);
        assert_eq!(c.cancelation_length(&word(&c, "sts")).unwrap(), 1);
    }

    #[test]
    fn cancelation_length_guards() {
        let p = artin("ab", &[]);
        let long = Word::random(p.alphabet(), 25, 3, true);
        assert!(matches!(
            p.cancelation_length(&long),
            Err(BalancedError::WordTooLong { len: 25, max: 24 })
        ));
        let small = word(&p, "abAB");
        assert!(matches!(
            p.cancelation_length_with_budget(&small, 2),
            Err(BalancedError::BudgetExceeded { budget: 2 })
        ));
    }

    #[test]
    fn edgeless_artin_matches_free_group_norm() {
        let p = artin("ab", &[]);
        for seed in 0..40 {
            let w = Word::random(p.alphabet(), (seed as usize % 12) + 1, 900 + seed, false);
            assert_eq!(
                p.cancelation_length(&w).unwrap(),
                cancelation_norm(&w),
                "word {w}"
            );
        }
    }

    #[test]
    fn complete_artin_matches_abelianization() {
        let p = artin("abc", &[('a', 'b'), ('a', 'c'), ('b', 'c')]);
        for seed in 0..40 {
            let w = Word::random(p.alphabet(), (seed as usize % 12) + 1, 1700 + seed, false);
            let expected: usize = w.exponent_sums().iter().map(|s| s.unsigned_abs() as usize).sum();
            assert_eq!(p.cancelation_length(&w).unwrap(), expected, "word {w}");
        }
    }

    #[test]
    fn complete_coxeter_matches_mod_two_abelianization() {
        let p = coxeter("abc", &[('a', 'b'), ('a', 'c'), ('b', 'c')]);
        for seed in 0..40 {
            let w = Word::random(p.alphabet(), seed as usize % 12, 2500 + seed, false);
            let expected: usize = w
                .exponent_sums()
                .iter()
                .map(|s| (s.unsigned_abs() % 2) as usize)
                .sum();
            assert_eq!(p.cancelation_length(&w).unwrap(), expected, "word {w}");
        }
    }

    #[test]
    fn rewrites_preserve_the_element() {
        let p = artin("abc", &[('a', 'b')]);
        let w = word(&p, "abcBA");
        for seed in 0..20 {
            let moved = p.random_balanced_rewrite(&w, 15, seed).unwrap();
            let quotient = moved.concat(&w.invert()).unwrap();
            assert!(p.is_trivial(&quotient).unwrap(), "seed {seed} gave {moved}");
        }
        assert_eq!(p.random_balanced_rewrite(&w, 0, 1).unwrap(), w);
    }

    #[test]
    fn cancelation_length_is_rewrite_invariant() {
        let p = coxeter("abc", &[('a', 'b'), ('b', 'c')]);
        let w = word(&p, "abcacb");
        let base = p.cancelation_length(&w).unwrap();
        for seed in 0..10 {
            let moved = p.random_balanced_rewrite(&w, 10, seed).unwrap();
            assert_eq!(p.cancelation_length(&moved).unwrap(), base, "seed {seed}");
        }
    }

    #[test]
    fn parabolic_examples() {
        let path = artin("abc", &[('a', 'b'), ('b', 'c')]);
        assert_eq!(
            path.parabolic_norm_check(&['a', 'c'], &word(&path, "acAC")).unwrap(),
            (2, 2)
        );
        assert_eq!(
            path.parabolic_norm_check(&['a', 'b', 'c'], &word(&path, "abC")).unwrap(),
            (3, 3)
        );

        let edge = artin("ab", &[('a', 'b')]);
        assert_eq!(
            edge.parabolic_norm_check(&['a'], &word(&edge, "aa")).unwrap(),
            (2, 2)
        );
        assert!(matches!(
            edge.parabolic_norm_check(&['a'], &word(&edge, "ab")),
            Err(BalancedError::LettersOutsideSubset { letter: 'b' })
        ));
    }
}
