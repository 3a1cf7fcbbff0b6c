//! Layered orderings of commutative semigroups with a unique idempotent,
//! their prefix tries, and the trie surgery that turns such a semigroup into
//! a null semigroup of the same size.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::constructions::null_semigroup;
use crate::error::{Error, Result};
use crate::semigroup::SemigroupSet;
use crate::transform::{Element, Transformation};
use crate::xi::{alpha, xi_u64};

/// A word: one letter per level.
pub type Word = Vec<usize>;

/// Blocks `A_0, A_1, …`: `A_0 = im e`, and `A_j` holds the unassigned points
/// sent into `A_0 ∪ … ∪ A_{j−1}` by every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl SPartition {
    pub fn degree(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

fn check_unique_idempotent(s: &SemigroupSet<Transformation>) -> Result<Transformation> {
    if !s.is_closed() {
        return Err(Error::NotClosed);
    }
    if !s.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let idempotents = s.idempotents();
    match idempotents.as_slice() {
        [e] => Ok(e.clone()),
        other => Err(Error::NotUniqueIdempotent(other.len())),
    }
}

pub fn s_partition(s: &SemigroupSet<Transformation>) -> Result<SPartition> {
    let e = check_unique_idempotent(s)?;
    let n = s.degree();
    let mut assigned = vec![false; n];
    let first = e.image();
    for &x in &first {
        assigned[x] = true;
    }
    let mut remaining = n - first.len();
    let mut blocks = vec![first];
    while remaining > 0 {
        let next: Vec<usize> = (0..n)
            .filter(|&x| !assigned[x] && s.iter().all(|b| assigned[b.get(x)]))
            .collect();
        if next.is_empty() {
            return Err(Error::internal(format!(
                "layering stalled with {remaining} points unassigned"
            )));
        }
        for &x in &next {
            assigned[x] = true;
        }
        remaining -= next.len();
        blocks.push(next);
    }
    Ok(SPartition { blocks })
}

/// Blocks in order, each ascending.
pub fn element_order(p: &SPartition) -> Vec<usize> {
    p.blocks
        .iter()
        .flat_map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect()
}

/// Word of `β` under `order`: letter `i` is the image of `order[i]`.
pub fn word_of(b: &Transformation, order: &[usize]) -> Word {
    order.iter().map(|&x| b.get(x)).collect()
}

/// Inverse of [`word_of`].
pub fn transformation_from_word(word: &[usize], order: &[usize]) -> Result<Transformation> {
    if word.len() != order.len() {
        return Err(Error::invalid("word length differs from the order length"));
    }
    let mut img = vec![0; order.len()];
    for (&x, &letter) in order.iter().zip(word) {
        img[x] = letter;
    }
    Transformation::new(img)
}

/// Sorted words of all elements.
pub fn words(s: &SemigroupSet<Transformation>, order: &[usize]) -> Vec<Word> {
    let mut out: Vec<Word> = s.iter().map(|b| word_of(b, order)).collect();
    out.sort();
    out
}

/// Concatenated 1-based letters; dot-separated once any letter exceeds 9.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    if word.iter().all(|&l| l < 9) {
        word.iter().map(|l| char::from(b'1' + *l as u8)).collect()
    } else {
        word.iter()
            .map(|l| (l + 1).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelKind {
    Linear,
    Branching,
}

impl LevelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LevelKind::Linear => "linear",
            LevelKind::Branching => "branching",
        }
    }
}

/// Per level `1..=depth` (index `i − 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile {
    pub kinds: Vec<LevelKind>,
    pub max_branching: Vec<usize>,
    pub trunk_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    depth: usize,
    letter: Option<usize>,
    parent: Option<usize>,
    children: Vec<usize>,
}

/// Prefix trie of equal-length words. Node 0 is the root; children are kept
/// sorted by letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiTree {
    order: Vec<usize>,
    depth: usize,
    nodes: Vec<Node>,
}

impl SemiTree {
    /// `order` documents which point each level stands for.
    pub fn from_words(order: Vec<usize>, words: &[Word]) -> Result<Self> {
        let depth = order.len();
        if let Some(w) = words.iter().find(|w| w.len() != depth) {
            return Err(Error::invalid(format!(
                "word of length {} in a tree of depth {depth}",
                w.len()
            )));
        }
        let mut sorted: Vec<&Word> = words.iter().collect();
        sorted.sort();
        sorted.dedup();
        let mut nodes = vec![Node {
            depth: 0,
            letter: None,
            parent: None,
            children: Vec::new(),
        }];
        // Sorted input means a new child is always the last one of its parent.
        let mut path: Vec<usize> = vec![0];
        let mut previous: Option<&Word> = None;
        for w in sorted {
            let shared =
                previous.map_or(0, |p| p.iter().zip(w).take_while(|(a, b)| a == b).count());
            path.truncate(shared + 1);
            for (i, &letter) in w.iter().enumerate().skip(shared) {
                let parent = path[i];
                let id = nodes.len();
                nodes.push(Node {
                    depth: i + 1,
                    letter: Some(letter),
                    parent: Some(parent),
                    children: Vec::new(),
                });
                nodes[parent].children.push(id);
                path.push(id);
            }
            previous = Some(w);
        }
        Ok(Self {
            order,
            depth,
            nodes,
        })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn word(&self, mut id: usize) -> Word {
        let mut w = Vec::with_capacity(self.nodes[id].depth);
        while let Some(letter) = self.nodes[id].letter {
            w.push(letter);
            id = self.nodes[id].parent.unwrap();
        }
        w.reverse();
        w
    }

    fn leaf_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].children.is_empty())
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_ids().count()
    }

    /// Leaf words in lexicographic order.
    pub fn leaf_words(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            if node.children.is_empty() {
                out.push(self.word(id));
            }
            stack.extend(node.children.iter().rev());
        }
        out
    }

    /// All node words (every prefix of a leaf word), sorted.
    pub fn node_words(&self) -> BTreeSet<Word> {
        (0..self.nodes.len()).map(|i| self.word(i)).collect()
    }

    /// Words of the nodes with at least two children, sorted.
    pub fn branchings(&self) -> Vec<Word> {
        let mut out: Vec<Word> = (0..self.nodes.len())
            .filter(|&i| self.nodes[i].children.len() >= 2)
            .map(|i| self.word(i))
            .collect();
        out.sort();
        out
    }

    pub fn level_profile(&self) -> LevelProfile {
        let mut max_branching = vec![0; self.depth];
        for node in &self.nodes {
            if node.depth < self.depth {
                let slot = &mut max_branching[node.depth];
                *slot = (*slot).max(node.children.len());
            }
        }
        let kinds: Vec<LevelKind> = max_branching
            .iter()
            .map(|&b| {
                if b <= 1 {
                    LevelKind::Linear
                } else {
                    LevelKind::Branching
                }
            })
            .collect();
        let trunk_length = kinds
            .iter()
            .take_while(|&&k| k == LevelKind::Linear)
            .count();
        LevelProfile {
            kinds,
            max_branching,
            trunk_length,
        }
    }

    /// Arcs at level `i > m` carry letters from `order[..i−1]`; arcs at level
    /// `i ≤ m` carry letters from `order[..m]`. Returns the first offending
    /// arc as (level, letter).
    pub fn check_label_invariant(&self, m: usize) -> std::result::Result<(), (usize, usize)> {
        let position = self.positions();
        for node in &self.nodes[1..] {
            let level = node.depth;
            let letter = node.letter.unwrap();
            let bound = if level > m { level - 1 } else { m };
            if position
                .get(letter)
                .copied()
                .flatten()
                .is_none_or(|p| p >= bound)
            {
                return Err((level, letter));
            }
        }
        Ok(())
    }

    /// For a branching at level `i > m` whose letters sit at order positions
    /// `i_1 < … < i_s`: `i_s < i` and levels `i_2, …, i_s` are linear.
    /// Returns the first offending branch node's word.
    pub fn check_linear_level_invariant(&self, m: usize) -> std::result::Result<(), Word> {
        let position = self.positions();
        let kinds = self.level_profile().kinds;
        for (id, node) in self.nodes.iter().enumerate() {
            let level = node.depth + 1;
            if node.children.len() < 2 || level <= m {
                continue;
            }
            let mut levels: Vec<usize> = Vec::with_capacity(node.children.len());
            for &c in &node.children {
                match position
                    .get(self.nodes[c].letter.unwrap())
                    .copied()
                    .flatten()
                {
                    Some(p) => levels.push(p + 1),
                    None => return Err(self.word(id)),
                }
            }
            levels.sort_unstable();
            let ok = *levels.last().unwrap() < level
                && levels[1..]
                    .iter()
                    .all(|&l| kinds[l - 1] == LevelKind::Linear);
            if !ok {
                return Err(self.word(id));
            }
        }
        Ok(())
    }

    /// `positions[x]`: where point `x` sits in the order.
    fn positions(&self) -> Vec<Option<usize>> {
        let size = self.order.iter().max().map_or(0, |&m| m + 1);
        let mut pos = vec![None; size];
        for (i, &x) in self.order.iter().enumerate() {
            pos[x] = Some(i);
        }
        pos
    }

    /// Graphviz rendering; trunk arcs are bold.
    pub fn to_dot(&self) -> String {
        let profile = self.level_profile();
        let mut out = String::from("digraph tree {\n");
        let order: Vec<String> = self.order.iter().map(|x| (x + 1).to_string()).collect();
        let _ = writeln!(out, "  // order: {}", order.join(","));
        for (i, k) in profile.kinds.iter().enumerate() {
            let _ = writeln!(out, "  // level {}: {}", i + 1, k.as_str());
        }
        let _ = writeln!(out, "  // trunk length: {}", profile.trunk_length);
        for (id, _) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{id} [label=\"{}\"];", format_word(&self.word(id)));
        }
        for (id, node) in self.nodes.iter().enumerate().skip(1) {
            let style = if node.depth <= profile.trunk_length {
                ", style=bold"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "  n{} -> n{id} [label=\"{}\"{style}];",
                node.parent.unwrap(),
                node.letter.unwrap() + 1
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Tree of `S` under `order`.
pub fn build_tree(s: &SemigroupSet<Transformation>, order: &[usize]) -> Result<SemiTree> {
    SemiTree::from_words(order.to_vec(), &words(s, order))
}

/// How the sorted image-prefixes are paired with the sorted replacement words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeafMatching {
    /// `i`-th with `i`-th.
    #[default]
    Lexicographic,
    /// `i`-th with `i`-th from the end.
    Reversed,
}

/// Every intermediate of [`nullify`].
#[derive(Debug, Clone)]
pub struct NullifyReport {
    pub partition: SPartition,
    pub order: Vec<usize>,
    pub tree: SemiTree,
    /// `|im e|`.
    pub image_size: usize,
    /// Distinct length-`|im e|` prefixes, sorted.
    pub prefixes: Vec<Word>,
    /// The first `|im e| + 1` points of the order.
    pub window: Vec<usize>,
    /// Points of the window mapped to the zero's value, in window indices.
    pub null_points: usize,
    /// Replacement null semigroup on window indices.
    pub replacement: SemigroupSet<Transformation>,
    /// Its words with the first letter dropped, sorted.
    pub replacement_words: Vec<Word>,
    pub spliced: SemiTree,
    pub spliced_profile: LevelProfile,
    pub contracted: SemiTree,
    /// Positional letters of the output, sorted.
    pub output_words: Vec<Word>,
    pub output: SemigroupSet<Transformation>,
}

/// Null semigroup of the same size as `s`, zero the constant map to the
/// first point of the order.
pub fn nullify(
    s: &SemigroupSet<Transformation>,
    m_override: Option<&SemigroupSet<Transformation>>,
) -> Result<SemigroupSet<Transformation>> {
    nullify_with(s, m_override, LeafMatching::default()).map(|r| r.output)
}

pub fn nullify_with(
    s: &SemigroupSet<Transformation>,
    m_override: Option<&SemigroupSet<Transformation>>,
    matching: LeafMatching,
) -> Result<NullifyReport> {
    let e = check_unique_idempotent(s)?;
    let n = s.degree();
    if e == Transformation::identity(n) {
        return Err(Error::IdentityIdempotent);
    }
    let partition = s_partition(s)?;
    let order = element_order(&partition);
    let all_words = words(s, &order);
    let tree = SemiTree::from_words(order.clone(), &all_words)?;
    let m = partition.blocks[0].len();

    let prefixes: Vec<Word> = all_words
        .iter()
        .map(|w| w[..m].to_vec())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let window: Vec<usize> = order[..=m].to_vec();
    let (null_points, replacement) = match m_override {
        Some(given) => (
            validate_replacement(given, m + 1, prefixes.len())?,
            given.clone(),
        ),
        None => default_replacement(m + 1, prefixes.len())?,
    };

    let local_order = element_order(&s_partition(&replacement)?);
    let mut replacement_words: Vec<Word> = replacement
        .iter()
        .map(|b| word_of(b, &local_order)[1..].to_vec())
        .collect();
    replacement_words.sort();
    if matching == LeafMatching::Reversed {
        replacement_words.reverse();
    }

    let spliced_words: Vec<Word> = all_words
        .iter()
        .map(|w| {
            let i = prefixes.binary_search(&w[..m].to_vec()).unwrap();
            let mut out = replacement_words[i].clone();
            out.extend_from_slice(&w[m..]);
            out
        })
        .collect();
    if matching == LeafMatching::Reversed {
        replacement_words.reverse();
    }
    let spliced = SemiTree::from_words(order.clone(), &spliced_words)?;
    let spliced_profile = spliced.level_profile();

    // Remove the linear levels below the trunk, then lengthen the trunk by
    // as many levels.
    let dropped: Vec<usize> = (spliced_profile.trunk_length..n)
        .filter(|&i| spliced_profile.kinds[i] == LevelKind::Linear)
        .collect();
    let contracted_words: Vec<Word> = spliced_words
        .iter()
        .map(|w| {
            let mut out = vec![0; dropped.len()];
            out.extend(
                w.iter()
                    .enumerate()
                    .filter(|(i, _)| dropped.binary_search(i).is_err())
                    .map(|(_, &l)| l),
            );
            out
        })
        .collect();
    let contracted = SemiTree::from_words(order.clone(), &contracted_words)?;
    let trunk = contracted.level_profile().trunk_length;

    let mut output_words = positional_words(&contracted, trunk)?;
    output_words.sort();
    let elements = output_words
        .iter()
        .map(|w| {
            let letters: Vec<usize> = w.iter().map(|&k| order[k]).collect();
            transformation_from_word(&letters, &order)
        })
        .collect::<Result<Vec<_>>>()?;
    let output = SemigroupSet::from_elements(n, elements)?;

    let zero = Transformation::constant(n, order[0])?;
    if output.len() != s.len() {
        return Err(Error::internal(format!(
            "output has {} elements, input {}",
            output.len(),
            s.len()
        )));
    }
    if !output.contains(&zero) || output.is_null()? != Some(zero) {
        return Err(Error::internal("output is not null with a rank-1 zero"));
    }

    Ok(NullifyReport {
        partition,
        order,
        tree,
        image_size: m,
        prefixes,
        window,
        null_points,
        replacement,
        replacement_words,
        spliced,
        spliced_profile,
        contracted,
        output_words,
        output,
    })
}

/// The first `size` elements, in canonical order, of the null semigroup on
/// `degree` points whose first `α(degree)` points collapse to point 0.
fn default_replacement(
    degree: usize,
    size: usize,
) -> Result<(usize, SemigroupSet<Transformation>)> {
    let t = alpha(degree)?;
    let available = xi_u64(degree)?;
    if size as u64 > available {
        return Err(Error::internal(format!(
            "{size} image prefixes exceed the null bound {available} on {degree} points"
        )));
    }
    let points: Vec<usize> = (0..t).collect();
    let full = null_semigroup(degree, &points)?;
    let chosen = full.elements()[..size].to_vec();
    Ok((
        t,
        SemigroupSet::from_elements(degree, chosen)?.with_flags(Some(true), Some(true)),
    ))
}

/// A replacement must be a null semigroup on the window with the constant
/// map to 0 as its zero, and of the right size. Returns how many window
/// points the elements collapse to 0.
fn validate_replacement(
    m: &SemigroupSet<Transformation>,
    degree: usize,
    size: usize,
) -> Result<usize> {
    if m.degree() != degree {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: m.degree(),
        });
    }
    if m.len() != size {
        return Err(Error::invalid(format!(
            "replacement has {} elements, expected {size}",
            m.len()
        )));
    }
    let zero = Transformation::constant(degree, 0)?;
    if m.is_null()? != Some(zero) {
        return Err(Error::invalid(
            "replacement must be null with zero the constant map to 0",
        ));
    }
    Ok((0..degree)
        .filter(|&x| m.iter().all(|b| b.get(x) == 0))
        .count())
}

/// Relabels arcs positionally: a lone child gets 0, the children of a
/// branching get `0..s` in letter order. Branchings must not exceed the
/// trunk length, so that every letter names a trunk point.
fn positional_words(tree: &SemiTree, trunk: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Word)> = vec![(0, Vec::new())];
    while let Some((id, word)) = stack.pop() {
        let children = &tree.nodes[id].children;
        if children.is_empty() {
            out.push(word);
            continue;
        }
        if children.len() > trunk {
            return Err(Error::internal(format!(
                "branching of size {} exceeds trunk length {trunk}",
                children.len()
            )));
        }
        for (k, &c) in children.iter().enumerate() {
            let mut next = word.clone();
            next.push(k);
            stack.push((c, next));
        }
    }
    Ok(out)
}
