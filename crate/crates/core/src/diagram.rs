//! Pairing-diagram categories truncated to a word-length window.
//!
//! Four flavours share one engine:
//!
//! * one dual pair (`b`/`w` strands, closed loops evaluate to δ);
//! * one morphism (`b`/`w`/`B`/`W`; loops in the first colour pair evaluate
//!   to δ, loops in the second to `t`, with a distinguished strand `b → B`);
//! * one endomorphism (`b`/`w` with dotted strands, a loop carrying `i`
//!   dots evaluates to δ_i, dot counts add under composition);
//! * one object without braiding (letters `X_i`, planar pairings only,
//!   index-adjacency rules; no closed loop can form).
//!
//! Objects are all words of length at most `max_len`; hom bases are
//! enumerated lazily per pair and memoized. Composition is concatenation:
//! trace paths through the middle line and multiply out loop scalars.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::cat::{BasisMor, Category, LinComb, MonoidalCategory, ObjId};
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use crate::Result;

/// A letter of the window alphabet. For the two-colour flavours `0` is the
/// plain strand `b` and `1` its dual `w`; the one-morphism flavour adds
/// `2` (`B`) and `3` (`W`). The unbraided flavour stores the index of `X_i`.
pub type Letter = i16;

pub const BLACK: Letter = 0;
pub const WHITE: Letter = 1;
pub const SQ_BLACK: Letter = 2;
pub const SQ_WHITE: Letter = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Parse `b`/`w` (plus `B`/`W` for the one-morphism flavour); `e` (or
    /// `-`) is the empty word.
    pub fn parse_colours(s: &str) -> Result<Word> {
        if s == "e" || s == "-" {
            return Ok(Word::empty());
        }
        let mut v = Vec::new();
        for ch in s.chars() {
            v.push(match ch {
                'b' => BLACK,
                'w' => WHITE,
                'B' => SQ_BLACK,
                'W' => SQ_WHITE,
                _ => return Err(Error::Parse { line: 0, msg: format!("bad letter {ch}") }),
            });
        }
        Ok(Word(v))
    }

    /// Parse a comma-separated index word, e.g. `0,2,1,1`; `e` (or `-`) is
    /// the empty word.
    pub fn parse_indices(s: &str) -> Result<Word> {
        if s == "e" || s == "-" || s.is_empty() {
            return Ok(Word::empty());
        }
        let mut v = Vec::new();
        for part in s.split(',') {
            let i: i16 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse { line: 0, msg: format!("bad index {part}") })?;
            v.push(i);
        }
        Ok(Word(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Src(usize),
    Tgt(usize),
}

/// A decorated perfect matching of the letter occurrences of a source and a
/// target word. `pairs` is canonical: each pair `(a, b)` has `a < b` and the
/// list is sorted; `dots` is aligned with `pairs` (all zero outside the
/// one-endomorphism flavour).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingDiagram {
    pub source: Word,
    pub target: Word,
    pub pairs: Vec<(End, End)>,
    pub dots: Vec<u32>,
}

impl PairingDiagram {
    pub fn canonicalize(&mut self) {
        let mut joined: Vec<((End, End), u32)> = self
            .pairs
            .iter()
            .zip(&self.dots)
            .map(|(&(a, b), &d)| (if a <= b { (a, b) } else { (b, a) }, d))
            .collect();
        joined.sort();
        self.pairs = joined.iter().map(|(p, _)| *p).collect();
        self.dots = joined.iter().map(|(_, d)| *d).collect();
    }

    pub fn total_dots(&self) -> u32 {
        self.dots.iter().sum()
    }

    pub fn short_name(&self) -> String {
        let mut s = String::new();
        for (k, (a, b)) in self.pairs.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            let fmt_end = |e: &End| match e {
                End::Src(i) => format!("s{i}"),
                End::Tgt(i) => format!("t{i}"),
            };
            s.push_str(&format!("{}-{}", fmt_end(a), fmt_end(b)));
            if self.dots[k] > 0 {
                s.push_str(&format!(":{}", self.dots[k]));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

#[derive(Debug, Clone)]
pub enum Flavor {
    OneObject { delta: Scalar },
    OneMorphism { delta: Scalar, t: Scalar },
    /// `deltas[i]` is the value of a loop with `i` dots; `deltas.len() - 1`
    /// is the dot budget of the window.
    OneEndomorphism { deltas: Vec<Scalar> },
    Unbraided { index_bound: i16 },
}

impl Flavor {
    fn planar(&self) -> bool {
        matches!(self, Flavor::Unbraided { .. })
    }

    fn max_dots(&self) -> u32 {
        match self {
            Flavor::OneEndomorphism { deltas } => (deltas.len() - 1) as u32,
            _ => 0,
        }
    }

    fn alphabet(&self) -> Vec<Letter> {
        match self {
            Flavor::OneObject { .. } | Flavor::OneEndomorphism { .. } => vec![BLACK, WHITE],
            Flavor::OneMorphism { .. } => vec![BLACK, WHITE, SQ_BLACK, SQ_WHITE],
            Flavor::Unbraided { index_bound } => (-index_bound..=*index_bound).collect(),
        }
    }

    fn letter_name(&self, l: Letter) -> String {
        match self {
            Flavor::Unbraided { .. } => format!("{l}"),
            _ => match l {
                BLACK => "b".into(),
                WHITE => "w".into(),
                SQ_BLACK => "B".into(),
                SQ_WHITE => "W".into(),
                _ => "?".into(),
            },
        }
    }

    /// May occurrence `a` be paired with occurrence `b`?
    fn legal_pair(&self, src: &Word, tgt: &Word, a: End, b: End) -> bool {
        let letter = |e: End| match e {
            End::Src(i) => src.0[i],
            End::Tgt(i) => tgt.0[i],
        };
        let (x, y) = (letter(a), letter(b));
        match self {
            Flavor::OneObject { .. } | Flavor::OneEndomorphism { .. } => match (a, b) {
                (End::Src(_), End::Tgt(_)) | (End::Tgt(_), End::Src(_)) => x == y,
                _ => x != y,
            },
            // same symbol across lines; the generating strand b→B and its
            // transpose W→w; plain and bead-carrying caps and cups
            Flavor::OneMorphism { .. } => match (a, b) {
                (End::Src(_), End::Tgt(_)) => {
                    x == y || (x == BLACK && y == SQ_BLACK) || (x == SQ_WHITE && y == WHITE)
                }
                (End::Tgt(_), End::Src(_)) => {
                    x == y || (y == BLACK && x == SQ_BLACK) || (y == SQ_WHITE && x == WHITE)
                }
                (End::Src(_), End::Src(_)) => {
                    pair_is(x, y, BLACK, WHITE)
                        || pair_is(x, y, SQ_BLACK, SQ_WHITE)
                        || pair_is(x, y, BLACK, SQ_WHITE)
                }
                (End::Tgt(_), End::Tgt(_)) => {
                    pair_is(x, y, BLACK, WHITE)
                        || pair_is(x, y, SQ_BLACK, SQ_WHITE)
                        || pair_is(x, y, SQ_BLACK, WHITE)
                }
            },
            Flavor::Unbraided { .. } => match (a, b) {
                (End::Src(_), End::Tgt(_)) | (End::Tgt(_), End::Src(_)) => x == y,
                // lower line: the left letter's index exceeds the right by one
                (End::Src(i), End::Src(j)) => {
                    let (li, lj) = if i < j { (x, y) } else { (y, x) };
                    li == lj + 1
                }
                // upper line: the right letter's index exceeds the left by one
                (End::Tgt(i), End::Tgt(j)) => {
                    let (li, lj) = if i < j { (x, y) } else { (y, x) };
                    lj == li + 1
                }
            },
        }
    }
}

fn pair_is(x: Letter, y: Letter, a: Letter, b: Letter) -> bool {
    (x == a && y == b) || (x == b && y == a)
}

fn arcs_cross(p: &(End, End), q: &(End, End)) -> bool {
    use End::*;
    let norm = |r: &(End, End)| (r.0.min(r.1), r.0.max(r.1));
    let (a, b) = norm(p);
    let (c, d) = norm(q);
    match ((a, b), (c, d)) {
        ((Src(s1), Tgt(t1)), (Src(s2), Tgt(t2))) => (s1 < s2) != (t1 < t2),
        ((Src(a1), Src(a2)), (Src(s), Tgt(_))) | ((Src(s), Tgt(_)), (Src(a1), Src(a2))) => {
            a1 < s && s < a2
        }
        ((Tgt(a1), Tgt(a2)), (Src(_), Tgt(t))) | ((Src(_), Tgt(t)), (Tgt(a1), Tgt(a2))) => {
            a1 < t && t < a2
        }
        ((Src(a1), Src(a2)), (Src(c1), Src(c2))) => {
            (a1 < c1 && c1 < a2 && a2 < c2) || (c1 < a1 && a1 < c2 && c2 < a2)
        }
        ((Tgt(a1), Tgt(a2)), (Tgt(c1), Tgt(c2))) => {
            (a1 < c1 && c1 < a2 && a2 < c2) || (c1 < a1 && a1 < c2 && c2 < a2)
        }
        _ => false,
    }
}

struct HomData {
    diagrams: Vec<PairingDiagram>,
    index: HashMap<PairingDiagram, usize>,
}

/// A window of one of the universal diagram categories: all words of length
/// `≤ max_len`, hom bases enumerated on demand.
pub struct DiagramCategory {
    pub name: String,
    field: FieldSpec,
    pub flavor: Flavor,
    pub max_len: usize,
    words: Vec<Word>,
    word_ids: HashMap<Word, ObjId>,
    homs: RwLock<HashMap<(ObjId, ObjId), Arc<HomData>>>,
}

impl DiagramCategory {
    fn new(name: String, field: FieldSpec, flavor: Flavor, max_len: usize) -> Result<Self> {
        let alphabet = flavor.alphabet();
        let mut words = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &alphabet {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        if words.len() > 200_000 {
            return Err(Error::Window(format!(
                "window of {} words is too large",
                words.len()
            )));
        }
        let word_ids = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Ok(DiagramCategory {
            name,
            field,
            flavor,
            max_len,
            words,
            word_ids,
            homs: RwLock::new(HashMap::new()),
        })
    }

    pub fn one_object(field: FieldSpec, delta: Scalar, max_len: usize) -> Result<Self> {
        Self::new(
            format!("OB(len≤{max_len})"),
            field,
            Flavor::OneObject { delta },
            max_len,
        )
    }

    pub fn one_morphism(field: FieldSpec, delta: Scalar, t: Scalar, max_len: usize) -> Result<Self> {
        Self::new(
            format!("MO(len≤{max_len})"),
            field,
            Flavor::OneMorphism { delta, t },
            max_len,
        )
    }

    pub fn one_endomorphism(field: FieldSpec, deltas: Vec<Scalar>, max_len: usize) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::Shape("need at least the 0-dot loop value".into()));
        }
        Self::new(
            format!("EN(len≤{max_len})"),
            field,
            Flavor::OneEndomorphism { deltas },
            max_len,
        )
    }

    pub fn unbraided(field: FieldSpec, max_len: usize, index_bound: i16) -> Result<Self> {
        Self::new(
            format!("Seq(len≤{max_len})"),
            field,
            Flavor::Unbraided { index_bound },
            max_len,
        )
    }

    pub fn word(&self, x: ObjId) -> &Word {
        &self.words[x]
    }

    pub fn word_id(&self, w: &Word) -> Result<ObjId> {
        self.word_ids.get(w).copied().ok_or_else(|| {
            Error::Window(format!(
                "word of length {} outside window (max {})",
                w.len(),
                self.max_len
            ))
        })
    }

    pub fn all_word_ids(&self) -> std::ops::Range<ObjId> {
        0..self.words.len()
    }

    fn hom_data(&self, src: ObjId, tgt: ObjId) -> Arc<HomData> {
        if let Some(d) = self.homs.read().unwrap().get(&(src, tgt)) {
            return d.clone();
        }
        let diagrams = self.enumerate_pairings(&self.words[src], &self.words[tgt]);
        let index = diagrams
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        let data = Arc::new(HomData { diagrams, index });
        self.homs.write().unwrap().insert((src, tgt), data.clone());
        data
    }

    fn enumerate_pairings(&self, src: &Word, tgt: &Word) -> Vec<PairingDiagram> {
        let m = src.len();
        let n = tgt.len();
        let ends: Vec<End> = (0..m).map(End::Src).chain((0..n).map(End::Tgt)).collect();
        let mut used = vec![false; ends.len()];
        let mut current: Vec<(End, End)> = Vec::new();
        let mut out = Vec::new();
        self.backtrack(src, tgt, &ends, &mut used, &mut current, &mut out);
        let mut diagrams = Vec::new();
        let budget = self.flavor.max_dots();
        for pairs in out {
            if let Flavor::OneEndomorphism { .. } = self.flavor {
                for dots in dot_vectors(pairs.len(), budget) {
                    let mut d = PairingDiagram {
                        source: src.clone(),
                        target: tgt.clone(),
                        pairs: pairs.clone(),
                        dots,
                    };
                    d.canonicalize();
                    diagrams.push(d);
                }
            } else {
                let mut d = PairingDiagram {
                    source: src.clone(),
                    target: tgt.clone(),
                    dots: vec![0; pairs.len()],
                    pairs,
                };
                d.canonicalize();
                diagrams.push(d);
            }
        }
        diagrams.sort();
        diagrams
    }

    fn backtrack(
        &self,
        src: &Word,
        tgt: &Word,
        ends: &[End],
        used: &mut Vec<bool>,
        current: &mut Vec<(End, End)>,
        out: &mut Vec<Vec<(End, End)>>,
    ) {
        let Some(first) = used.iter().position(|u| !u) else {
            out.push(current.clone());
            return;
        };
        used[first] = true;
        for j in first + 1..ends.len() {
            if used[j] {
                continue;
            }
            let (a, b) = (ends[first], ends[j]);
            if !self.flavor.legal_pair(src, tgt, a, b) {
                continue;
            }
            if self.flavor.planar() && current.iter().any(|p| arcs_cross(p, &(a, b))) {
                continue;
            }
            used[j] = true;
            current.push((a, b));
            self.backtrack(src, tgt, ends, used, current, out);
            current.pop();
            used[j] = false;
        }
        used[first] = false;
    }

    pub fn diagram(&self, m: BasisMor) -> PairingDiagram {
        self.hom_data(m.src, m.tgt).diagrams[m.idx].clone()
    }

    pub fn basis_of(&self, src: ObjId, tgt: ObjId) -> Vec<PairingDiagram> {
        self.hom_data(src, tgt).diagrams.clone()
    }

    pub fn basis_index(&self, d: &PairingDiagram) -> Result<usize> {
        let src = self.word_id(&d.source)?;
        let tgt = self.word_id(&d.target)?;
        self.hom_data(src, tgt)
            .index
            .get(d)
            .copied()
            .ok_or_else(|| Error::Internal(format!("diagram {} not in basis", d.short_name())))
    }

    /// Concatenate `g ∘ f` and evaluate loop scalars. Returns the traced
    /// diagram and the product of loop values.
    pub fn compose_diagrams(
        &self,
        g: &PairingDiagram,
        f: &PairingDiagram,
    ) -> Result<(PairingDiagram, Scalar)> {
        if f.target != g.source {
            return Err(Error::ObjectMismatch("diagram composition".into()));
        }
        let mid = &f.target;
        let mut f_adj: HashMap<End, (End, u32)> = HashMap::new();
        for (k, &(a, b)) in f.pairs.iter().enumerate() {
            f_adj.insert(a, (b, f.dots[k]));
            f_adj.insert(b, (a, f.dots[k]));
        }
        let mut g_adj: HashMap<End, (End, u32)> = HashMap::new();
        for (k, &(a, b)) in g.pairs.iter().enumerate() {
            g_adj.insert(a, (b, g.dots[k]));
            g_adj.insert(b, (a, g.dots[k]));
        }

        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
        enum Node {
            U(usize),
            M(usize),
            W(usize),
        }
        let mut visited_mid = vec![false; mid.len()];
        let mut result_pairs: Vec<(End, End)> = Vec::new();
        let mut result_dots: Vec<u32> = Vec::new();
        let externals: Vec<Node> = (0..f.source.len())
            .map(Node::U)
            .chain((0..g.target.len()).map(Node::W))
            .collect();
        let mut seen: HashMap<Node, bool> = externals.iter().map(|&n| (n, false)).collect();
        let to_end = |n: Node| match n {
            Node::U(i) => End::Src(i),
            Node::W(i) => End::Tgt(i),
            Node::M(_) => unreachable!(),
        };

        for &start in &externals {
            if seen[&start] {
                continue;
            }
            seen.insert(start, true);
            let mut dots = 0u32;
            let mut via_f = matches!(start, Node::U(_));
            let mut at = start;
            let end_node = loop {
                let (partner, d) = if via_f {
                    let key = match at {
                        Node::U(i) => End::Src(i),
                        Node::M(m) => End::Tgt(m),
                        Node::W(_) => unreachable!(),
                    };
                    *f_adj
                        .get(&key)
                        .ok_or_else(|| Error::Internal("unmatched endpoint".into()))?
                } else {
                    let key = match at {
                        Node::W(i) => End::Tgt(i),
                        Node::M(m) => End::Src(m),
                        Node::U(_) => unreachable!(),
                    };
                    *g_adj
                        .get(&key)
                        .ok_or_else(|| Error::Internal("unmatched endpoint".into()))?
                };
                dots += d;
                if via_f {
                    match partner {
                        End::Src(u) => break Node::U(u),
                        End::Tgt(m) => {
                            visited_mid[m] = true;
                            at = Node::M(m);
                            via_f = false;
                        }
                    }
                } else {
                    match partner {
                        End::Tgt(w) => break Node::W(w),
                        End::Src(m) => {
                            visited_mid[m] = true;
                            at = Node::M(m);
                            via_f = true;
                        }
                    }
                }
            };
            seen.insert(end_node, true);
            result_pairs.push((to_end(start), to_end(end_node)));
            result_dots.push(dots);
        }

        // remaining middle points form closed loops
        let mut scalar = self.field.one();
        for i in 0..mid.len() {
            if visited_mid[i] {
                continue;
            }
            let mut letters = Vec::new();
            let mut dots = 0u32;
            let mut cur = i;
            let mut leave_via_f = true;
            loop {
                visited_mid[cur] = true;
                letters.push(mid.0[cur]);
                let (partner, d) = if leave_via_f {
                    *f_adj.get(&End::Tgt(cur)).unwrap()
                } else {
                    *g_adj.get(&End::Src(cur)).unwrap()
                };
                dots += d;
                let next = if leave_via_f {
                    match partner {
                        End::Tgt(j) => j,
                        End::Src(_) => return Err(Error::Internal("loop escaped".into())),
                    }
                } else {
                    match partner {
                        End::Src(j) => j,
                        End::Tgt(_) => return Err(Error::Internal("loop escaped".into())),
                    }
                };
                leave_via_f = !leave_via_f;
                cur = next;
                if cur == i && leave_via_f {
                    break;
                }
            }
            scalar = self.field.mul(&scalar, &self.loop_value(&letters, dots)?)?;
        }

        let mut result = PairingDiagram {
            source: f.source.clone(),
            target: g.target.clone(),
            pairs: result_pairs,
            dots: result_dots,
        };
        result.canonicalize();

        if let Flavor::OneEndomorphism { deltas } = &self.flavor {
            let budget = (deltas.len() - 1) as u32;
            if result.total_dots() > budget {
                return Err(Error::DotBudget(format!(
                    "composite carries {} dots, budget is {budget}",
                    result.total_dots()
                )));
            }
        }

        // the traced diagram must be a basis element of its hom pair
        for &(a, b) in &result.pairs {
            if !self
                .flavor
                .legal_pair(&result.source, &result.target, a, b)
            {
                return Err(Error::Internal(format!(
                    "composition produced illegal pair in {}",
                    result.short_name()
                )));
            }
        }
        Ok((result, scalar))
    }

    fn loop_value(&self, letters: &[Letter], dots: u32) -> Result<Scalar> {
        match &self.flavor {
            Flavor::OneObject { delta } => Ok(delta.clone()),
            Flavor::OneMorphism { delta, t } => {
                let has_first = letters.iter().any(|&l| l == BLACK || l == WHITE);
                let has_second = letters.iter().any(|&l| l == SQ_BLACK || l == SQ_WHITE);
                match (has_first, has_second) {
                    (true, false) => Ok(delta.clone()),
                    (false, true) => Ok(t.clone()),
                    _ => Err(Error::Internal("mixed-colour loop".into())),
                }
            }
            Flavor::OneEndomorphism { deltas } => {
                deltas.get(dots as usize).cloned().ok_or_else(|| {
                    Error::DotBudget(format!(
                        "loop with {dots} dots exceeds budget {}",
                        deltas.len() - 1
                    ))
                })
            }
            Flavor::Unbraided { .. } => Err(Error::Internal(
                "closed loop in unbraided composition".into(),
            )),
        }
    }

    fn dual_letter(&self, l: Letter) -> Letter {
        match &self.flavor {
            Flavor::Unbraided { .. } => l + 1,
            _ => match l {
                BLACK => WHITE,
                WHITE => BLACK,
                SQ_BLACK => SQ_WHITE,
                SQ_WHITE => SQ_BLACK,
                _ => l,
            },
        }
    }

    fn dual_word(&self, w: &Word) -> Result<Word> {
        let v: Vec<Letter> = w.0.iter().rev().map(|&l| self.dual_letter(l)).collect();
        if let Flavor::Unbraided { index_bound } = &self.flavor {
            if v.iter().any(|l| l.abs() > *index_bound) {
                return Err(Error::Window("dual letter outside index bound".into()));
            }
        }
        Ok(Word(v))
    }

    /// The swap of adjacent letters `i, i+1` of `w` as a basis diagram.
    pub fn symmetry(&self, w: &Word, i: usize) -> Result<BasisMor> {
        if self.flavor.planar() {
            return Err(Error::Unsupported("no braiding in this flavour".into()));
        }
        let mut tgt = w.0.clone();
        tgt.swap(i, i + 1);
        let tgt = Word(tgt);
        let mut pairs = Vec::new();
        for p in 0..w.len() {
            let q = if p == i {
                i + 1
            } else if p == i + 1 {
                i
            } else {
                p
            };
            pairs.push((End::Src(p), End::Tgt(q)));
        }
        let mut d = PairingDiagram {
            source: w.clone(),
            target: tgt,
            dots: vec![0; pairs.len()],
            pairs,
        };
        d.canonicalize();
        let idx = self.basis_index(&d)?;
        Ok(BasisMor {
            src: self.word_id(&d.source)?,
            tgt: self.word_id(&d.target)?,
            idx,
        })
    }

    /// The distinguished strand `b → B` of the one-morphism flavour.
    pub fn mu(&self) -> Result<BasisMor> {
        match self.flavor {
            Flavor::OneMorphism { .. } => {
                let src = self.word_id(&Word(vec![BLACK]))?;
                let tgt = self.word_id(&Word(vec![SQ_BLACK]))?;
                if self.hom_dim(src, tgt) != 1 {
                    return Err(Error::Internal("generating strand not unique".into()));
                }
                Ok(BasisMor { src, tgt, idx: 0 })
            }
            _ => Err(Error::Unsupported("mu needs the one-morphism flavour".into())),
        }
    }

    /// The one-dot strand `b → b` of the one-endomorphism flavour.
    pub fn epsilon(&self) -> Result<BasisMor> {
        match self.flavor {
            Flavor::OneEndomorphism { .. } => {
                let b = self.word_id(&Word(vec![BLACK]))?;
                let mut d = PairingDiagram {
                    source: Word(vec![BLACK]),
                    target: Word(vec![BLACK]),
                    pairs: vec![(End::Src(0), End::Tgt(0))],
                    dots: vec![1],
                };
                d.canonicalize();
                Ok(BasisMor { src: b, tgt: b, idx: self.basis_index(&d)? })
            }
            _ => Err(Error::Unsupported(
                "epsilon needs the one-endomorphism flavour".into(),
            )),
        }
    }
}

fn dot_vectors(len: usize, budget: u32) -> Vec<Vec<u32>> {
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur[pos] = d;
            rec(cur, pos + 1, left - d, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; len];
    rec(&mut cur, 0, budget, &mut out);
    out
}

impl Category for DiagramCategory {
    fn field(&self) -> FieldSpec {
        self.field
    }

    fn object_count(&self) -> usize {
        self.words.len()
    }

    fn object_name(&self, x: ObjId) -> String {
        let w = &self.words[x];
        if w.is_empty() {
            return "e".into();
        }
        match &self.flavor {
            Flavor::Unbraided { .. } => w
                .0
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(","),
            _ => w.0.iter().map(|&l| self.flavor.letter_name(l)).collect(),
        }
    }

    fn hom_dim(&self, src: ObjId, tgt: ObjId) -> usize {
        self.hom_data(src, tgt).diagrams.len()
    }

    fn basis_name(&self, m: BasisMor) -> String {
        format!(
            "{}>{}:{}",
            self.object_name(m.src),
            self.object_name(m.tgt),
            m.idx
        )
    }

    fn compose_basis(&self, g: BasisMor, f: BasisMor) -> Result<LinComb> {
        if f.tgt != g.src {
            return Err(Error::ObjectMismatch("diagram compose_basis".into()));
        }
        let fd = self.diagram(f);
        let gd = self.diagram(g);
        let (result, scalar) = self.compose_diagrams(&gd, &fd)?;
        if scalar.is_zero() {
            return Ok(Vec::new());
        }
        Ok(vec![(self.basis_index(&result)?, scalar)])
    }

    fn identity(&self, x: ObjId) -> Result<LinComb> {
        let w = &self.words[x];
        let mut d = PairingDiagram {
            source: w.clone(),
            target: w.clone(),
            pairs: (0..w.len()).map(|i| (End::Src(i), End::Tgt(i))).collect(),
            dots: vec![0; w.len()],
        };
        d.canonicalize();
        Ok(vec![(self.basis_index(&d)?, self.field.one())])
    }
}

impl MonoidalCategory for DiagramCategory {
    fn unit(&self) -> ObjId {
        0 // the empty word is enumerated first
    }

    fn tensor_obj(&self, x: ObjId, y: ObjId) -> Result<ObjId> {
        let w = self.words[x].concat(&self.words[y]);
        self.word_id(&w)
    }

    fn tensor_basis(&self, a: BasisMor, b: BasisMor) -> Result<LinComb> {
        let da = self.diagram(a);
        let db = self.diagram(b);
        let (sa, ta) = (da.source.len(), da.target.len());
        let shift = |e: End| match e {
            End::Src(i) => End::Src(i + sa),
            End::Tgt(i) => End::Tgt(i + ta),
        };
        let mut pairs = da.pairs.clone();
        let mut dots = da.dots.clone();
        for (k, &(x, y)) in db.pairs.iter().enumerate() {
            pairs.push((shift(x), shift(y)));
            dots.push(db.dots[k]);
        }
        let mut d = PairingDiagram {
            source: da.source.concat(&db.source),
            target: da.target.concat(&db.target),
            pairs,
            dots,
        };
        d.canonicalize();
        if let Flavor::OneEndomorphism { deltas } = &self.flavor {
            if d.total_dots() > (deltas.len() - 1) as u32 {
                return Err(Error::DotBudget("tensor exceeds dot budget".into()));
            }
        }
        Ok(vec![(self.basis_index(&d)?, self.field.one())])
    }

    fn has_duality(&self) -> bool {
        true
    }

    fn dual(&self, x: ObjId) -> Result<ObjId> {
        let w = self.dual_word(&self.words[x])?;
        self.word_id(&w)
    }

    /// Nested caps `x* ⊗ x → 1`.
    fn ev(&self, x: ObjId) -> Result<LinComb> {
        let w = &self.words[x];
        let n = w.len();
        let dual = self.dual_word(w)?;
        let src = dual.concat(w);
        let pairs: Vec<(End, End)> = (0..n)
            .map(|i| (End::Src(i), End::Src(2 * n - 1 - i)))
            .collect();
        let mut d = PairingDiagram {
            source: src,
            target: Word::empty(),
            dots: vec![0; pairs.len()],
            pairs,
        };
        d.canonicalize();
        Ok(vec![(self.basis_index(&d)?, self.field.one())])
    }

    /// Nested cups `1 → x ⊗ x*`.
    fn co(&self, x: ObjId) -> Result<LinComb> {
        let w = &self.words[x];
        let n = w.len();
        let dual = self.dual_word(w)?;
        let tgt = w.concat(&dual);
        let pairs: Vec<(End, End)> = (0..n)
            .map(|i| (End::Tgt(i), End::Tgt(2 * n - 1 - i)))
            .collect();
        let mut d = PairingDiagram {
            source: Word::empty(),
            target: tgt,
            dots: vec![0; pairs.len()],
            pairs,
        };
        d.canonicalize();
        Ok(vec![(self.basis_index(&d)?, self.field.one())])
    }
}

/// The functor sending the generating object (and its dual) to `k^n` and a
/// pairing diagram to its contraction matrix. Functorial on the one-object
/// window exactly when `n ≡ δ` in the field.
pub struct ContractionFunctor<'c> {
    pub cat: &'c DiagramCategory,
    pub n: usize,
}

impl<'c> ContractionFunctor<'c> {
    pub fn new(cat: &'c DiagramCategory, n: usize) -> Result<Self> {
        match &cat.flavor {
            Flavor::OneObject { delta } => {
                if *delta != cat.field.from_int(n as i64) {
                    return Err(Error::Validation(format!(
                        "loop value must equal {n} in the field for a {n}-dimensional image"
                    )));
                }
            }
            _ => {
                return Err(Error::Unsupported(
                    "contraction needs the one-object flavour".into(),
                ))
            }
        }
        Ok(ContractionFunctor { cat, n })
    }
}

impl crate::cat::LinearFunctor for ContractionFunctor<'_> {
    fn field(&self) -> FieldSpec {
        self.cat.field
    }

    fn obj_dim(&self, x: ObjId) -> usize {
        self.n.pow(self.cat.word(x).len() as u32)
    }

    fn on_basis(&self, m: BasisMor) -> Result<ExactMatrix> {
        let d = self.cat.diagram(m);
        let sl = d.source.len();
        let tl = d.target.len();
        let rows = self.n.pow(tl as u32);
        let cols = self.n.pow(sl as u32);
        let field = self.cat.field;
        let one = field.one();
        let mut out = ExactMatrix::zeros(field, rows, cols);
        let digits = |mut v: usize, len: usize| -> Vec<usize> {
            let mut ds = vec![0usize; len];
            for p in (0..len).rev() {
                ds[p] = v % self.n;
                v /= self.n;
            }
            ds
        };
        for col in 0..cols {
            let i_dig = digits(col, sl);
            'row: for row in 0..rows {
                let j_dig = digits(row, tl);
                for &(a, b) in &d.pairs {
                    let val = |e: End| match e {
                        End::Src(i) => i_dig[i],
                        End::Tgt(i) => j_dig[i],
                    };
                    if val(a) != val(b) {
                        continue 'row;
                    }
                }
                out[(row, col)] = one.clone();
            }
        }
        Ok(out)
    }
}

/// Materialize a window of a lazily enumerated category as an explicit
/// presentation (for export and for checking that concatenation agrees with
/// table-driven structure constants).
pub fn export_presentation(
    c: &DiagramCategory,
    objects: &[ObjId],
) -> Result<crate::cat::CatPresentation> {
    let mut b = crate::cat::CatPresentation::builder(&format!("{}-export", c.name), c.field());
    let mut map = HashMap::new();
    for &x in objects {
        map.insert(x, b.object(&c.object_name(x)));
    }
    let mut mors: Vec<(BasisMor, BasisMor)> = Vec::new();
    for &x in objects {
        for &y in objects {
            for idx in 0..c.hom_dim(x, y) {
                let m = BasisMor { src: x, tgt: y, idx };
                let pm = b.basis_mor(&c.basis_name(m), map[&x], map[&y]);
                mors.push((m, pm));
            }
        }
    }
    for &x in objects {
        b.identity(map[&x], c.identity(x)?);
    }
    for &(g, pg) in &mors {
        for &(f, pf) in &mors {
            if f.tgt != g.src {
                continue;
            }
            // indices agree because presentation morphisms were added in
            // diagram basis order per hom pair
            b.rule(pg, pf, c.compose_basis(g, f)?);
        }
    }
    b.finish()
}
