//! Framed link presentations: braid words, sliced (Morse) diagrams built from
//! elementary pieces, oriented planar-diagram codes and a small catalog.
//!
//! Framing is the blackboard framing of the diagram. Extra framing is added
//! as Reidemeister-I kinks, realized by Markov stabilization of the braid.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("cannot parse `{0}`: expected B<strands>:i1,i2,...")]
    Parse(String),
    #[error("generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i64, strands: usize },
    #[error("tangle is not closed ({input} inputs, {output} outputs)")]
    OpenTangle { input: usize, output: usize },
    #[error("slice {0} does not fit the current width")]
    ArityMismatch(usize),
    #[error("invalid PD code: {0}")]
    InvalidPd(String),
    #[error("unknown link `{0}`")]
    UnknownLink(String),
    #[error("invalid link file: {0}")]
    LinkFile(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    word: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i64>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::Parse(
                "a braid needs at least one strand".into(),
            ));
        }
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(DiagramError::GeneratorOutOfRange {
                    generator: g,
                    strands,
                });
            }
        }
        Ok(Self { strands, word })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i64] {
        &self.word
    }

    /// Exponent sum, which is the writhe of the closure.
    pub fn exponent_sum(&self) -> i64 {
        self.word.iter().map(|g| g.signum()).sum()
    }

    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            word: self.word.iter().map(|g| -g).collect(),
        }
    }

    /// Appends `|k|` kinks of sign `k` by repeated Markov stabilization.
    pub fn with_kinks(&self, k: i64) -> Self {
        let mut out = self.clone();
        for _ in 0..k.unsigned_abs() {
            out.word.push(k.signum() * out.strands as i64);
            out.strands += 1;
        }
        out
    }

    /// The permutation `strand at bottom ↦ strand at top`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            for p in pos.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        pos
    }

    /// Number of cycles of [`Self::permutation`], the number of components of
    /// the closure.
    pub fn cycle_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    pub fn render(&self) -> String {
        let word: Vec<String> = self.word.iter().map(i64::to_string).collect();
        format!("B{}:{}", self.strands, word.join(","))
    }
}

/// Parses `B<s>:i1,i2,...`; the word may be empty.
pub fn parse_braid(text: &str) -> Result<BraidWord, DiagramError> {
    let bad = || DiagramError::Parse(text.to_string());
    let rest = text.trim().strip_prefix('B').ok_or_else(bad)?;
    let (s, word) = rest.split_once(':').ok_or_else(bad)?;
    let strands: usize = s.trim().parse().map_err(|_| bad())?;
    let word = word
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    BraidWord::new(strands, word)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Piece {
    Id,
    /// Over strand from bottom-left to top-right.
    PosCross,
    /// Over strand from bottom-right to top-left.
    NegCross,
    Cup,
    Cap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slice {
    pub position: usize,
    pub piece: Piece,
}

impl Slice {
    pub fn new(position: usize, piece: Piece) -> Self {
        Self { position, piece }
    }
}

/// A diagram read bottom to top as a sequence of elementary slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicedTangle {
    slices: Vec<Slice>,
    input_arity: usize,
    output_arity: usize,
}

impl SlicedTangle {
    /// Checks that every slice fits the width below it.
    pub fn new(input_arity: usize, slices: Vec<Slice>) -> Result<Self, DiagramError> {
        let mut width = input_arity;
        for (k, s) in slices.iter().enumerate() {
            width = next_width(width, *s).ok_or(DiagramError::ArityMismatch(k))?;
        }
        Ok(Self {
            slices,
            input_arity,
            output_arity: width,
        })
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn input_arity(&self) -> usize {
        self.input_arity
    }

    pub fn output_arity(&self) -> usize {
        self.output_arity
    }

    pub fn is_closed(&self) -> bool {
        self.input_arity == 0 && self.output_arity == 0
    }

    /// Width below each slice, followed by the output width.
    pub fn widths(&self) -> Vec<usize> {
        let mut out = vec![self.input_arity];
        for s in &self.slices {
            let w = next_width(*out.last().expect("nonempty"), *s).expect("validated");
            out.push(w);
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.slices
            .iter()
            .filter(|s| matches!(s.piece, Piece::PosCross | Piece::NegCross))
            .count()
    }

    /// A copy with extra slices spliced in before slice `index`.
    pub fn with_inserted(&self, index: usize, extra: &[Slice]) -> Result<Self, DiagramError> {
        let mut slices = self.slices.clone();
        slices.splice(index..index, extra.iter().copied());
        Self::new(self.input_arity, slices)
    }

    /// Oriented writhe. On braid closures this is `#PosCross - #NegCross`.
    pub fn writhe(&self) -> Result<i64, DiagramError> {
        if !self.is_closed() {
            return Err(DiagramError::OpenTangle {
                input: self.input_arity,
                output: self.output_arity,
            });
        }
        Ok(pd_from_sliced(self)?.writhe())
    }
}

fn next_width(width: usize, s: Slice) -> Option<usize> {
    match s.piece {
        Piece::Id => (s.position <= width).then_some(width),
        Piece::PosCross | Piece::NegCross => (s.position + 2 <= width).then_some(width),
        Piece::Cup => (s.position <= width).then_some(width + 2),
        Piece::Cap => (s.position + 2 <= width).then(|| width - 2),
    }
}

/// Closure of a braid: `s` nested cups, the crossings on the left `s`
/// strands, then `s` nested caps.
pub fn braid_closure_sliced(b: &BraidWord) -> SlicedTangle {
    let s = b.strands();
    let mut slices: Vec<Slice> = (0..s).map(|p| Slice::new(p, Piece::Cup)).collect();
    for &g in b.word() {
        let piece = if g > 0 {
            Piece::PosCross
        } else {
            Piece::NegCross
        };
        slices.push(Slice::new(g.unsigned_abs() as usize - 1, piece));
    }
    slices.extend((0..s).rev().map(|p| Slice::new(p, Piece::Cap)));
    SlicedTangle::new(0, slices).expect("closure is well formed")
}

/// One crossing of a PD code. `arcs` lists the four arc labels
/// counterclockwise, starting from the incoming under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdCrossing {
    pub arcs: [usize; 4],
    pub sign: i8,
}

impl PdCrossing {
    /// Sign read off consecutive labels along the over-strand: positive when
    /// the over-strand runs from `arcs[3]` to `arcs[1]`.
    pub fn infer_sign(arcs: [usize; 4]) -> i8 {
        let (b, d) = (arcs[1], arcs[3]);
        if b == d + 1 || d > b + 1 {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCode {
    crossings: Vec<PdCrossing>,
    /// Components without crossings.
    free_loops: usize,
}

impl PdCode {
    /// Validates that every arc label occurs exactly twice.
    pub fn new(crossings: Vec<PdCrossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for c in &crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(DiagramError::InvalidPd(format!("crossing sign {}", c.sign)));
            }
            for &a in &c.arcs {
                *count.entry(a).or_default() += 1;
            }
        }
        if let Some((a, k)) = count.iter().find(|(_, &k)| k != 2) {
            return Err(DiagramError::InvalidPd(format!("arc {a} occurs {k} times")));
        }
        Ok(Self {
            crossings,
            free_loops,
        })
    }

    /// Parses `{"pd": [[a,b,c,d], ...], "signs": [..]?, "free_loops": k?}`;
    /// missing signs are inferred from the labels.
    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        #[derive(Deserialize)]
        struct Raw {
            pd: Vec<[usize; 4]>,
            #[serde(default)]
            signs: Option<Vec<i8>>,
            #[serde(default)]
            free_loops: usize,
        }
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| DiagramError::LinkFile(e.to_string()))?;
        if let Some(signs) = &raw.signs {
            if signs.len() != raw.pd.len() {
                return Err(DiagramError::InvalidPd("one sign per crossing".into()));
            }
        }
        let crossings = raw
            .pd
            .iter()
            .enumerate()
            .map(|(i, &arcs)| PdCrossing {
                arcs,
                sign: raw
                    .signs
                    .as_ref()
                    .map_or_else(|| PdCrossing::infer_sign(arcs), |s| s[i]),
            })
            .collect();
        Self::new(crossings, raw.free_loops)
    }

    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn arcs(&self) -> Vec<usize> {
        let mut arcs: Vec<usize> = self.crossings.iter().flat_map(|c| c.arcs).collect();
        arcs.sort_unstable();
        arcs.dedup();
        arcs
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Components, counted by following strands straight through crossings.
    pub fn component_count(&self) -> usize {
        let arcs = self.arcs();
        let index = |a: usize| arcs.binary_search(&a).expect("arc label");
        let mut uf = UnionFind::new(arcs.len());
        for c in &self.crossings {
            uf.union(index(c.arcs[0]), index(c.arcs[2]));
            uf.union(index(c.arcs[1]), index(c.arcs[3]));
        }
        uf.classes() + self.free_loops
    }

    pub fn mirror(&self) -> Self {
        // Rotating each crossing by one slot swaps over and under.
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let arcs = if c.sign > 0 {
                    [c.arcs[3], c.arcs[0], c.arcs[1], c.arcs[2]]
                } else {
                    [c.arcs[1], c.arcs[2], c.arcs[3], c.arcs[0]]
                };
                PdCrossing {
                    arcs,
                    sign: -c.sign,
                }
            })
            .collect();
        Self {
            crossings,
            free_loops: self.free_loops,
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn push(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn classes(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }
}

// Endpoint slots of a crossing, counterclockwise.
const BL: usize = 0;
const BR: usize = 1;
const TR: usize = 2;
const TL: usize = 3;

/// Traces a closed sliced diagram into an oriented PD code. Each component
/// is oriented so that it runs upward through the first crossing it meets;
/// arcs are numbered consecutively along the orientation.
pub fn pd_from_sliced(t: &SlicedTangle) -> Result<PdCode, DiagramError> {
    if !t.is_closed() {
        return Err(DiagramError::OpenTangle {
            input: t.input_arity,
            output: t.output_arity,
        });
    }
    let mut uf = UnionFind::new(0);
    let mut current: Vec<usize> = Vec::new();
    // (piece, segment at BL, BR, TR, TL)
    let mut crossings: Vec<(Piece, [usize; 4])> = Vec::new();
    for s in t.slices() {
        let p = s.position;
        match s.piece {
            Piece::Id => {}
            Piece::Cup => {
                let x = uf.push();
                current.splice(p..p, [x, x]);
            }
            Piece::Cap => {
                uf.union(current[p], current[p + 1]);
                current.drain(p..p + 2);
            }
            Piece::PosCross | Piece::NegCross => {
                let (tl, tr) = (uf.push(), uf.push());
                let mut segs = [0; 4];
                (segs[BL], segs[BR], segs[TR], segs[TL]) = (current[p], current[p + 1], tr, tl);
                crossings.push((s.piece, segs));
                current[p] = tl;
                current[p + 1] = tr;
            }
        }
    }
    // arc root -> its two crossing endpoints
    let mut ends: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, (_, segs)) in crossings.iter().enumerate() {
        for (slot, &seg) in segs.iter().enumerate() {
            let root = uf.find(seg);
            ends.entry(root).or_default().push((ci, slot));
        }
    }
    let mut all_roots: Vec<usize> = (0..uf.parent.len()).map(|i| uf.find(i)).collect();
    all_roots.sort_unstable();
    all_roots.dedup();
    let free_loops = all_roots.iter().filter(|r| !ends.contains_key(r)).count();

    let opposite = |slot: usize| (slot + 2) % 4;
    let other_end = |ci: usize, slot: usize, root: usize| -> (usize, usize) {
        let e = &ends[&root];
        if e[0] == (ci, slot) {
            e[1]
        } else {
            e[0]
        }
    };
    let n = crossings.len();
    // label of the arc ending at each slot
    let mut labels = vec![[0usize; 4]; n];
    // whether the strand through (crossing, slot pair) runs upward
    let mut upward = vec![[false; 2]; n];
    let mut visited = vec![[false; 2]; n];
    let mut next_label = 1;
    for start in 0..n {
        for strand in 0..2 {
            if visited[start][strand] {
                continue;
            }
            // enter at the bottom slot, i.e. run upward through `start`
            let first_label = next_label;
            let (mut ci, mut slot) = (start, strand);
            loop {
                let pair = slot % 2;
                visited[ci][pair] = true;
                upward[ci][pair] = slot == BL || slot == BR;
                labels[ci][slot] = next_label;
                let exit = opposite(slot);
                let root = uf.find(crossings[ci].1[exit]);
                let (nci, nslot) = other_end(ci, exit, root);
                if (nci, nslot) == (start, strand) {
                    labels[ci][exit] = first_label;
                    next_label += 1;
                    break;
                }
                next_label += 1;
                labels[ci][exit] = next_label;
                ci = nci;
                slot = nslot;
            }
        }
    }
    let mut pd = Vec::with_capacity(n);
    for (ci, (piece, _)) in crossings.iter().enumerate() {
        // over strand pairs (BL,TR) for PosCross and (BR,TL) for NegCross
        let over_pair = if *piece == Piece::PosCross { BL } else { BR };
        let under_pair = 1 - over_pair;
        let same = upward[ci][0] == upward[ci][1];
        let sign = match (piece, same) {
            (Piece::PosCross, true) | (Piece::NegCross, false) => 1,
            _ => -1,
        };
        let under_in = if upward[ci][under_pair] {
            under_pair
        } else {
            opposite(under_pair)
        };
        let arcs = [0, 1, 2, 3].map(|k| labels[ci][(under_in + k) % 4]);
        pd.push(PdCrossing { arcs, sign });
    }
    PdCode::new(pd, free_loops)
}

/// Number of link components of a closed sliced diagram.
pub fn component_count(t: &SlicedTangle) -> Result<usize, DiagramError> {
    Ok(pd_from_sliced(t)?.component_count())
}

/// A framed link given as a braid closure plus extra kinks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSpec {
    pub braid: BraidWord,
    #[serde(default)]
    pub framing_kinks: i64,
}

impl LinkSpec {
    pub fn new(braid: BraidWord, framing_kinks: i64) -> Self {
        Self {
            braid,
            framing_kinks,
        }
    }

    /// Parses `{"braid": {"strands": s, "word": [..]}, "framing_kinks": k}`.
    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let spec: LinkSpec =
            serde_json::from_str(text).map_err(|e| DiagramError::LinkFile(e.to_string()))?;
        let braid = BraidWord::new(spec.braid.strands, spec.braid.word)?;
        Ok(Self {
            braid,
            framing_kinks: spec.framing_kinks,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// The braid with kinks folded in.
    pub fn framed_braid(&self) -> BraidWord {
        self.braid.with_kinks(self.framing_kinks)
    }

    pub fn sliced(&self) -> SlicedTangle {
        braid_closure_sliced(&self.framed_braid())
    }

    pub fn pd(&self) -> PdCode {
        pd_from_sliced(&self.sliced()).expect("closures are closed")
    }

    pub fn mirror(&self) -> Self {
        Self {
            braid: self.braid.mirror(),
            framing_kinks: -self.framing_kinks,
        }
    }
}

/// Catalog entries: name, braid, extra kinks.
const CATALOG: &[(&str, &str, i64)] = &[
    ("unknot", "B1:", 0),
    ("unknot+kink", "B1:", 1),
    ("unknot-kink", "B1:", -1),
    ("unlink2", "B2:", 0),
    ("hopf+", "B2:1,1", 0),
    ("hopf-", "B2:-1,-1", 0),
    ("trefoil-right", "B2:1,1,1", 0),
    ("trefoil-left", "B2:-1,-1,-1", 0),
    ("figure-eight", "B3:1,-2,1,-2", 0),
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(n, _, _)| *n).collect()
}

/// Looks up a catalog link; `trefoil` and `hopf` are accepted as aliases of
/// the right-handed versions.
pub fn catalog_link(name: &str) -> Result<LinkSpec, DiagramError> {
    let key = match name {
        "trefoil" => "trefoil-right",
        "hopf" => "hopf+",
        "figure8" => "figure-eight",
        other => other,
    };
    let (_, braid, kinks) = CATALOG
        .iter()
        .find(|(n, _, _)| *n == key)
        .ok_or_else(|| DiagramError::UnknownLink(name.to_string()))?;
    Ok(LinkSpec::new(parse_braid(braid)?, *kinks))
}

pub fn catalog() -> Vec<(&'static str, LinkSpec)> {
    CATALOG
        .iter()
        .map(|(n, _, _)| (*n, catalog_link(n).expect("catalog entries parse")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_braids() {
        let b = parse_braid("B2:1,1,1").unwrap();
        assert_eq!((b.strands(), b.word()), (2, &[1, 1, 1][..]));
        let b = parse_braid("B3:1,-2,1,-2").unwrap();
        assert_eq!(b.word(), &[1, -2, 1, -2]);
        assert_eq!(parse_braid("B1:").unwrap().word(), &[] as &[i64]);
        assert_eq!(
            parse_braid("B2:3"),
            Err(DiagramError::GeneratorOutOfRange {
                generator: 3,
                strands: 2
            })
        );
        assert!(matches!(parse_braid("B2:x"), Err(DiagramError::Parse(_))));
        assert!(matches!(parse_braid("2:1"), Err(DiagramError::Parse(_))));
        assert_eq!(parse_braid(&b.render()).unwrap(), b);
    }

    #[test]
    fn closures_have_expected_shape() {
        let unknot = braid_closure_sliced(&parse_braid("B1:").unwrap());
        assert_eq!(
            unknot.slices(),
            &[Slice::new(0, Piece::Cup), Slice::new(0, Piece::Cap)]
        );
        let hopf = braid_closure_sliced(&parse_braid("B2:1,1").unwrap());
        assert_eq!(hopf.crossing_count(), 2);
        assert!(hopf.is_closed());
        assert_eq!(hopf.widths(), vec![0, 2, 4, 4, 4, 2, 0]);
        assert_eq!(
            braid_closure_sliced(&parse_braid("B2:1,1,1").unwrap()).crossing_count(),
            3
        );
    }

    #[test]
    fn arity_errors() {
        assert_eq!(
            SlicedTangle::new(0, vec![Slice::new(0, Piece::Cap)]),
            Err(DiagramError::ArityMismatch(0))
        );
        let open = SlicedTangle::new(2, vec![Slice::new(0, Piece::PosCross)]).unwrap();
        assert_eq!(open.output_arity(), 2);
        assert!(matches!(
            open.writhe(),
            Err(DiagramError::OpenTangle { .. })
        ));
    }

    #[test]
    fn writhes() {
        let w = |s: &str| {
            braid_closure_sliced(&parse_braid(s).unwrap())
                .writhe()
                .unwrap()
        };
        assert_eq!(w("B2:1,1,1"), 3);
        assert_eq!(w("B3:1,-2,1,-2"), 0);
        assert_eq!(w("B2:-1,-1,-1"), -3);
        assert_eq!(w("B2:1,1"), 2);
    }

    fn distinct(a: [usize; 4]) -> bool {
        (0..4).all(|i| (i + 1..4).all(|j| a[i] != a[j]))
    }

    #[test]
    fn pd_codes_are_consistent() {
        for (name, link) in catalog() {
            let pd = link.pd();
            assert_eq!(
                pd.crossings().len(),
                link.framed_braid().word().len(),
                "{name}"
            );
            assert_eq!(
                pd.component_count(),
                link.framed_braid().cycle_count(),
                "{name}"
            );
            assert_eq!(pd.writhe(), link.framed_braid().exponent_sum(), "{name}");
            // label arithmetic only determines signs on knots
            let knot = pd.component_count() == 1;
            for c in pd.crossings().iter().filter(|c| knot && distinct(c.arcs)) {
                assert_eq!(PdCrossing::infer_sign(c.arcs), c.sign, "{name}");
            }
        }
    }

    #[test]
    fn trefoil_pd_matches_standard_form() {
        let pd = catalog_link("trefoil").unwrap().pd();
        assert_eq!(pd.arcs(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(pd.free_loops(), 0);
        assert!(pd.crossings().iter().all(|c| c.sign == 1));
        let unlink = catalog_link("unlink2").unwrap().pd();
        assert_eq!((unlink.crossings().len(), unlink.free_loops()), (0, 2));
    }

    #[test]
    fn pd_json_round_trip() {
        let pd = PdCode::from_json(r#"{"pd": [[1,5,2,4],[3,1,4,6],[5,3,6,2]]}"#).unwrap();
        assert_eq!(pd.writhe(), 3);
        assert_eq!(pd.component_count(), 1);
        assert!(PdCode::from_json(r#"{"pd": [[1,1,2,3]]}"#).is_err());
        assert_eq!(pd.mirror().writhe(), -3);
    }

    #[test]
    fn link_json() {
        let spec = LinkSpec::from_json(
            r#"{"braid": {"strands": 2, "word": [1, 1, 1]}, "framing_kinks": 2}"#,
        )
        .unwrap();
        assert_eq!(spec.framed_braid().render(), "B4:1,1,1,2,3");
        assert_eq!(LinkSpec::from_json(&spec.to_json()).unwrap(), spec);
        assert!(matches!(
            LinkSpec::from_json(r#"{"braid": {"strands": 2, "word": [2]}}"#),
            Err(DiagramError::GeneratorOutOfRange { .. })
        ));
        assert!(matches!(
            catalog_link("nope"),
            Err(DiagramError::UnknownLink(_))
        ));
    }

    fn braid_strategy() -> impl Strategy<Value = BraidWord> {
        (1usize..5).prop_flat_map(|s| {
            let gens = if s == 1 {
                Just(vec![]).boxed()
            } else {
                prop::collection::vec(
                    (1..s as i64, any::<bool>()).prop_map(|(g, p)| if p { g } else { -g }),
                    0..8,
                )
                .boxed()
            };
            gens.prop_map(move |w| BraidWord::new(s, w).unwrap())
        })
    }

    proptest! {
        #[test]
        fn closure_invariants(b in braid_strategy()) {
            let t = braid_closure_sliced(&b);
            prop_assert!(t.is_closed());
            let pd = pd_from_sliced(&t).unwrap();
            prop_assert_eq!(pd.crossings().len(), b.word().len());
            prop_assert_eq!(pd.component_count(), b.cycle_count());
            prop_assert_eq!(t.writhe().unwrap(), b.exponent_sum());
            prop_assert_eq!(braid_closure_sliced(&b.mirror()).writhe().unwrap(), -b.exponent_sum());
        }
    }
}
