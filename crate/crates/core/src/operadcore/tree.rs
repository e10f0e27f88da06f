//! Decorated rooted trees: the basis objects of free operads and cofree
//! cooperads.
//!
//! Leaves carry 0-based labels internally and 1-based labels in text form.
//! A tree is canonical when the children of every vertex are ordered by
//! their minimal descendant leaf. Putting a tree in canonical form may
//! change its decorations (through the generator action) and its sign
//! (through the Koszul rule on vertex degrees), so it yields a linear
//! combination.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::shift::{koszul_sign, swap_sign};
use crate::error::{Error, Result};
use crate::linalg::ExactScalar;
use crate::symmetry::{surjection_classes_by_size, SnRepresentation};

/// Space index reserved for the placeholder vertex used in substitutions.
pub const HOLE: usize = usize::MAX;

/// A basis element of one generator space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub space: usize,
    pub index: usize,
}

impl Letter {
    pub const fn new(space: usize, index: usize) -> Self {
        Letter { space, index }
    }

    /// Placeholder vertex of the given arity.
    pub const fn hole(arity: usize) -> Self {
        Letter { space: HOLE, index: arity }
    }

    pub fn is_hole(self) -> bool {
        self.space == HOLE
    }
}

/// One homogeneous generator space: a representation of `S_k` placed in
/// a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterSpace {
    pub name: String,
    pub degree: i64,
    pub rep: SnRepresentation,
}

impl LetterSpace {
    pub fn arity(&self) -> usize {
        self.rep.arity()
    }
}

/// The generators of a free operad, split into homogeneous spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    spaces: Vec<LetterSpace>,
}

impl Alphabet {
    pub fn new(spaces: Vec<LetterSpace>) -> Result<Self> {
        for (i, s) in spaces.iter().enumerate() {
            if s.arity() < 2 {
                return Err(Error::Precondition(format!("generator space {:?} has arity {} < 2", s.name, s.arity())));
            }
            if spaces[..i].iter().any(|t| t.name == s.name) {
                return Err(Error::Precondition(format!("duplicate generator name {:?}", s.name)));
            }
            if s.name.is_empty() || !s.name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Precondition(format!("generator name {:?} must be alphanumeric", s.name)));
            }
            s.rep.check_coxeter()?;
        }
        Ok(Alphabet { spaces })
    }

    pub(crate) fn new_unchecked(spaces: Vec<LetterSpace>) -> Self {
        Alphabet { spaces }
    }

    pub fn spaces(&self) -> &[LetterSpace] {
        &self.spaces
    }

    pub fn space(&self, i: usize) -> &LetterSpace {
        &self.spaces[i]
    }

    pub fn arity(&self, l: Letter) -> usize {
        if l.is_hole() {
            l.index
        } else {
            self.spaces[l.space].arity()
        }
    }

    pub fn degree(&self, l: Letter) -> i64 {
        if l.is_hole() {
            0
        } else {
            self.spaces[l.space].degree
        }
    }

    /// Every generator shifted by `k` in degree.
    pub fn shifted(&self, k: i64) -> Alphabet {
        let spaces = self.spaces.iter().map(|s| LetterSpace { degree: s.degree + k, ..s.clone() }).collect();
        Alphabet { spaces }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.spaces.iter().enumerate().flat_map(|(s, sp)| (0..sp.rep.dim()).map(move |i| Letter::new(s, i)))
    }

    pub fn letter_count(&self) -> usize {
        self.spaces.iter().map(|s| s.rep.dim()).sum()
    }

    /// `l(.., y_i, y_{i+1}, ..) = Σ c · l'(.., y_{i+1}, y_i, ..)`.
    fn swap_children(&self, l: Letter, i: usize) -> Vec<(Letter, ExactScalar)> {
        if l.is_hole() {
            return vec![(l, ExactScalar::one())];
        }
        let m = self.spaces[l.space].rep.adjacent(i);
        (0..m.rows())
            .filter(|&r| !m.get(r, l.index).is_zero())
            .map(|r| (Letter::new(l.space, r), m.get(r, l.index).clone()))
            .collect()
    }

    pub fn letter_name(&self, l: Letter) -> String {
        if l.is_hole() {
            return "_".into();
        }
        let s = &self.spaces[l.space];
        if s.rep.dim() == 1 {
            s.name.clone()
        } else {
            format!("{}.{}", s.name, l.index)
        }
    }

    fn letter_by_name(&self, name: &str) -> Result<Letter> {
        if name == "_" {
            return Err(Error::Parse("placeholder vertices cannot be parsed".into()));
        }
        let (base, idx) = match name.split_once('.') {
            Some((b, i)) => (b, Some(i.parse::<usize>().map_err(|_| Error::Parse(format!("bad letter {name:?}")))?)),
            None => (name, None),
        };
        let space = self
            .spaces
            .iter()
            .position(|s| s.name == base)
            .ok_or_else(|| Error::Parse(format!("unknown generator {base:?}")))?;
        let dim = self.spaces[space].rep.dim();
        let index = match idx {
            Some(i) if i < dim => i,
            None if dim == 1 => 0,
            _ => return Err(Error::Parse(format!("generator {name:?} needs an index below {dim}"))),
        };
        Ok(Letter::new(space, index))
    }
}

/// A rooted tree with decorated internal vertices and labelled leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoratedTree {
    Leaf(usize),
    Vertex(Letter, Vec<DecoratedTree>),
}

/// A finite linear combination of trees with nonzero coefficients.
pub type TreeCombination = BTreeMap<DecoratedTree, ExactScalar>;

pub(crate) fn add_term(acc: &mut TreeCombination, t: DecoratedTree, c: ExactScalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(t) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn add_scaled(acc: &mut TreeCombination, other: TreeCombination, c: &ExactScalar) {
    for (t, x) in other {
        add_term(acc, t, x * c);
    }
}

impl DecoratedTree {
    /// The identity: a single leaf.
    pub fn identity() -> Self {
        DecoratedTree::Leaf(0)
    }

    /// One vertex with leaves `1..k` in order.
    pub fn corolla(letter: Letter, k: usize) -> Self {
        DecoratedTree::Vertex(letter, (0..k).map(DecoratedTree::Leaf).collect())
    }

    pub fn arity(&self) -> usize {
        match self {
            DecoratedTree::Leaf(_) => 1,
            DecoratedTree::Vertex(_, ch) => ch.iter().map(Self::arity).sum(),
        }
    }

    /// Number of internal vertices.
    pub fn weight(&self) -> usize {
        match self {
            DecoratedTree::Leaf(_) => 0,
            DecoratedTree::Vertex(_, ch) => 1 + ch.iter().map(Self::weight).sum::<usize>(),
        }
    }

    pub fn min_leaf(&self) -> usize {
        match self {
            DecoratedTree::Leaf(x) => *x,
            DecoratedTree::Vertex(_, ch) => ch.iter().map(Self::min_leaf).min().expect("vertex has children"),
        }
    }

    /// Leaf labels in preorder.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            DecoratedTree::Leaf(x) => out.push(*x),
            DecoratedTree::Vertex(_, ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Vertex decorations in preorder.
    pub fn vertices(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_vertices(&mut out);
        out
    }

    fn collect_vertices(&self, out: &mut Vec<Letter>) {
        if let DecoratedTree::Vertex(l, ch) = self {
            out.push(*l);
            ch.iter().for_each(|c| c.collect_vertices(out));
        }
    }

    pub fn degree(&self, alphabet: &Alphabet) -> i64 {
        self.vertices().iter().map(|&l| alphabet.degree(l)).sum()
    }

    pub fn root(&self) -> Option<Letter> {
        match self {
            DecoratedTree::Leaf(_) => None,
            DecoratedTree::Vertex(l, _) => Some(*l),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            DecoratedTree::Leaf(_) => true,
            DecoratedTree::Vertex(_, ch) => {
                ch.windows(2).all(|w| w[0].min_leaf() < w[1].min_leaf()) && ch.iter().all(Self::is_canonical)
            }
        }
    }

    /// Applies `f` to every leaf label, keeping the shape.
    pub fn map_leaves(&self, f: &dyn Fn(usize) -> usize) -> DecoratedTree {
        match self {
            DecoratedTree::Leaf(x) => DecoratedTree::Leaf(f(*x)),
            DecoratedTree::Vertex(l, ch) => DecoratedTree::Vertex(*l, ch.iter().map(|c| c.map_leaves(f)).collect()),
        }
    }

    /// Replaces the labels by their ranks. Monotone relabelling keeps a
    /// canonical tree canonical. Returns the sorted original labels.
    pub fn standardize(&self) -> (DecoratedTree, Vec<usize>) {
        let mut labels = self.leaves();
        labels.sort_unstable();
        let rank: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        (self.map_leaves(&|x| rank[&x]), labels)
    }

    /// Bracketed text form, e.g. `((1 2) 3)`; vertex letters are appended
    /// as `@name` unless the alphabet has a single letter.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        self.render_into(alphabet, alphabet.letter_count() == 1, &mut s);
        s
    }

    fn render_into(&self, alphabet: &Alphabet, bare: bool, out: &mut String) {
        match self {
            DecoratedTree::Leaf(x) => {
                let _ = write!(out, "{}", x + 1);
            }
            DecoratedTree::Vertex(l, ch) => {
                out.push('(');
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    c.render_into(alphabet, bare, out);
                }
                out.push(')');
                if !bare || l.is_hole() {
                    out.push('@');
                    out.push_str(&alphabet.letter_name(*l));
                }
            }
        }
    }

    /// Parses the bracketed form. The result need not be canonical.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<DecoratedTree> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace() || *c == ' ').collect();
        let mut pos = 0;
        let tree = parse_node(alphabet, &chars, &mut pos)?;
        skip_spaces(&chars, &mut pos);
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input in tree {text:?}")));
        }
        let mut labels = tree.leaves();
        labels.sort_unstable();
        if labels != (0..labels.len()).collect::<Vec<_>>() {
            return Err(Error::Parse(format!("leaf labels of {text:?} are not a bijection onto 1..n")));
        }
        Ok(tree)
    }
}

fn skip_spaces(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos] == ' ' {
        *pos += 1;
    }
}

fn parse_node(alphabet: &Alphabet, chars: &[char], pos: &mut usize) -> Result<DecoratedTree> {
    skip_spaces(chars, pos);
    let err = |m: &str, at: usize| Error::Parse(format!("{m} at offset {at}"));
    match chars.get(*pos) {
        Some('(') => {
            *pos += 1;
            let mut children = Vec::new();
            loop {
                skip_spaces(chars, pos);
                match chars.get(*pos) {
                    Some(')') => {
                        *pos += 1;
                        break;
                    }
                    None => return Err(err("unbalanced parenthesis", *pos)),
                    _ => children.push(parse_node(alphabet, chars, pos)?),
                }
            }
            let letter = if chars.get(*pos) == Some(&'@') {
                *pos += 1;
                let start = *pos;
                while *pos < chars.len() && (chars[*pos].is_alphanumeric() || matches!(chars[*pos], '_' | '.')) {
                    *pos += 1;
                }
                alphabet.letter_by_name(&chars[start..*pos].iter().collect::<String>())?
            } else if alphabet.letter_count() == 1 {
                alphabet.letters().next().expect("one letter")
            } else {
                return Err(err("vertex needs an @letter suffix", *pos));
            };
            if alphabet.arity(letter) != children.len() {
                let m = format!("vertex {} expects {} children", alphabet.letter_name(letter), alphabet.arity(letter));
                return Err(err(&m, *pos));
            }
            Ok(DecoratedTree::Vertex(letter, children))
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let label: usize = chars[start..*pos].iter().collect::<String>().parse().map_err(|_| err("bad label", start))?;
            if label == 0 {
                return Err(err("leaf labels start at 1", start));
            }
            Ok(DecoratedTree::Leaf(label - 1))
        }
        _ => Err(err("expected '(' or a leaf label", *pos)),
    }
}

/// Canonical form of `tree` as a linear combination of canonical trees.
pub fn canonicalize(alphabet: &Alphabet, tree: &DecoratedTree) -> TreeCombination {
    let mut out = TreeCombination::new();
    for (t, c) in canon(alphabet, tree) {
        add_term(&mut out, t, c);
    }
    out
}

fn canon(alphabet: &Alphabet, tree: &DecoratedTree) -> Vec<(DecoratedTree, ExactScalar)> {
    let (letter, children) = match tree {
        DecoratedTree::Leaf(_) => return vec![(tree.clone(), ExactScalar::one())],
        DecoratedTree::Vertex(l, ch) => (*l, ch),
    };
    let child_forms: Vec<Vec<(DecoratedTree, ExactScalar)>> = children.iter().map(|c| canon(alphabet, c)).collect();
    let mut combos: Vec<(Vec<DecoratedTree>, ExactScalar)> = vec![(Vec::new(), ExactScalar::one())];
    for forms in &child_forms {
        combos = combos
            .into_iter()
            .flat_map(|(prefix, c)| {
                forms.iter().map(move |(t, x)| {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    (p, &c * x)
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for (mut kids, coef) in combos {
        let mut degs: Vec<i64> = kids.iter().map(|k| k.degree(alphabet)).collect();
        let mut mins: Vec<usize> = kids.iter().map(DecoratedTree::min_leaf).collect();
        let mut terms: BTreeMap<Letter, ExactScalar> = BTreeMap::from([(letter, coef)]);
        let n = kids.len();
        for pass in 0..n {
            for i in 0..n - 1 - pass {
                if mins[i] > mins[i + 1] {
                    let s = swap_sign(degs[i], degs[i + 1]);
                    let mut next = BTreeMap::new();
                    for (l, c) in terms {
                        for (l2, c2) in alphabet.swap_children(l, i) {
                            *next.entry(l2).or_insert_with(ExactScalar::zero) += &c * &c2 * &s;
                        }
                    }
                    next.retain(|_, v: &mut ExactScalar| !v.is_zero());
                    terms = next;
                    kids.swap(i, i + 1);
                    degs.swap(i, i + 1);
                    mins.swap(i, i + 1);
                }
            }
        }
        for (l, c) in terms {
            out.push((DecoratedTree::Vertex(l, kids.clone()), c));
        }
    }
    out
}

/// Relabels leaves by `f` (a bijection of the label set) and canonicalises.
pub fn relabel(alphabet: &Alphabet, tree: &DecoratedTree, f: &dyn Fn(usize) -> usize) -> TreeCombination {
    canonicalize(alphabet, &tree.map_leaves(f))
}

/// Tree with a bookkeeping tag on every vertex, used to read off the
/// Koszul sign of a rearrangement of vertices.
#[derive(Clone, Debug)]
enum Tagged {
    Leaf(usize),
    Vertex(Letter, usize, Vec<Tagged>),
}

impl Tagged {
    /// Tags are `scale · (preorder index)`.
    fn from_tree(t: &DecoratedTree, scale: usize) -> Tagged {
        fn go(t: &DecoratedTree, next: &mut usize, scale: usize) -> Tagged {
            match t {
                DecoratedTree::Leaf(x) => Tagged::Leaf(*x),
                DecoratedTree::Vertex(l, ch) => {
                    let tag = *next * scale;
                    *next += 1;
                    Tagged::Vertex(*l, tag, ch.iter().map(|c| go(c, next, scale)).collect())
                }
            }
        }
        go(t, &mut 0, scale)
    }

    fn shift_tags(self, by: usize) -> Tagged {
        match self {
            Tagged::Leaf(x) => Tagged::Leaf(x),
            Tagged::Vertex(l, t, ch) => Tagged::Vertex(l, t + by, ch.into_iter().map(|c| c.shift_tags(by)).collect()),
        }
    }

    fn untag(&self) -> DecoratedTree {
        match self {
            Tagged::Leaf(x) => DecoratedTree::Leaf(*x),
            Tagged::Vertex(l, _, ch) => DecoratedTree::Vertex(*l, ch.iter().map(Tagged::untag).collect()),
        }
    }

    fn preorder(&self, alphabet: &Alphabet, out: &mut Vec<(usize, i64)>) {
        if let Tagged::Vertex(l, t, ch) = self {
            out.push((*t, alphabet.degree(*l)));
            ch.iter().for_each(|c| c.preorder(alphabet, out));
        }
    }

    fn map_leaves(self, f: &mut dyn FnMut(usize) -> Tagged) -> Tagged {
        match self {
            Tagged::Leaf(x) => f(x),
            Tagged::Vertex(l, t, ch) => Tagged::Vertex(l, t, ch.into_iter().map(|c| c.map_leaves(f)).collect()),
        }
    }
}

/// Sign of bringing the vertices of `parts`, read in order, from the
/// order of their tags.
fn tag_sign(alphabet: &Alphabet, parts: &[&Tagged]) -> ExactScalar {
    let mut seq = Vec::new();
    for p in parts {
        p.preorder(alphabet, &mut seq);
    }
    koszul_sign(&seq)
}

/// Partial composition `t1 ∘_i t2` (0-based slot `i`): the leaves of `t2`
/// take the positions `i, .., i + n2 - 1`.
pub fn graft(alphabet: &Alphabet, t1: &DecoratedTree, i: usize, t2: &DecoratedTree) -> Result<TreeCombination> {
    let (n1, n2) = (t1.arity(), t2.arity());
    if i >= n1 {
        return Err(Error::Precondition(format!("slot {} outside 1..{}", i + 1, n1)));
    }
    let lower = Tagged::from_tree(&t2.map_leaves(&|y| y + i), 1).shift_tags(t1.weight());
    let upper = Tagged::from_tree(t1, 1);
    let mut lower = Some(lower);
    let joined = upper.map_leaves(&mut |x| {
        if x < i {
            Tagged::Leaf(x)
        } else if x == i {
            lower.take().expect("leaf labels are distinct")
        } else {
            Tagged::Leaf(x + n2 - 1)
        }
    });
    let s = tag_sign(alphabet, &[&joined]);
    let mut out = TreeCombination::new();
    add_scaled(&mut out, canonicalize(alphabet, &joined.untag()), &s);
    Ok(out)
}

/// Replaces the unique placeholder vertex of `context` (arity `m`) by
/// `tau`, an `m`-ary tree whose leaf `j` receives the `j`-th child of the
/// placeholder. Vertices of `tau` are read as sitting, in their own
/// preorder, where the placeholder was.
pub fn substitute(alphabet: &Alphabet, context: &DecoratedTree, tau: &DecoratedTree) -> TreeCombination {
    const SCALE: usize = 1 << 16;
    let k = Tagged::from_tree(context, SCALE);
    let hole_tag = {
        let mut seq = Vec::new();
        fn find(t: &Tagged, out: &mut Vec<usize>) {
            if let Tagged::Vertex(l, tag, ch) = t {
                if l.is_hole() {
                    out.push(*tag);
                }
                ch.iter().for_each(|c| find(c, out));
            }
        }
        find(&k, &mut seq);
        assert_eq!(seq.len(), 1, "context must contain exactly one placeholder");
        seq[0]
    };
    let inner = Tagged::from_tree(tau, 1).shift_tags(hole_tag);
    fn replace(t: Tagged, inner: &Tagged) -> Tagged {
        match t {
            Tagged::Leaf(x) => Tagged::Leaf(x),
            Tagged::Vertex(l, tag, ch) => {
                let ch: Vec<Tagged> = ch.into_iter().map(|c| replace(c, inner)).collect();
                if l.is_hole() {
                    assert_eq!(ch.len(), l.index, "placeholder arity mismatch");
                    let mut slots: Vec<Option<Tagged>> = ch.into_iter().map(Some).collect();
                    inner.clone().map_leaves(&mut |j| slots[j].take().expect("bijective leaves"))
                } else {
                    Tagged::Vertex(l, tag, ch)
                }
            }
        }
    }
    let joined = replace(k, &inner);
    let s = tag_sign(alphabet, &[&joined]);
    let mut out = TreeCombination::new();
    add_scaled(&mut out, canonicalize(alphabet, &joined.untag()), &s);
    out
}

/// One term of the infinitesimal decomposition of a tree: the sub-tree at
/// a non-root vertex is cut off. `upper` keeps the original labels, with
/// the cut point carrying the minimal label of `lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub sign: ExactScalar,
    pub upper: DecoratedTree,
    pub lower: DecoratedTree,
}

/// All cuts at non-root internal vertices, in preorder of the cut vertex.
pub fn cuts(alphabet: &Alphabet, tree: &DecoratedTree) -> Vec<Cut> {
    let tagged = Tagged::from_tree(tree, 1);
    let weight = tree.weight();
    let mut out = Vec::new();
    for target in 1..weight {
        let mut lower = None;
        fn split(t: &Tagged, target: usize, lower: &mut Option<Tagged>) -> Tagged {
            match t {
                Tagged::Leaf(x) => Tagged::Leaf(*x),
                Tagged::Vertex(_, tag, _) if *tag == target => {
                    *lower = Some(t.clone());
                    Tagged::Leaf(t.untag().min_leaf())
                }
                Tagged::Vertex(l, tag, ch) => {
                    Tagged::Vertex(*l, *tag, ch.iter().map(|c| split(c, target, lower)).collect())
                }
            }
        }
        let upper = split(&tagged, target, &mut lower);
        let lower = lower.expect("every non-root tag is a vertex");
        let sign = tag_sign(alphabet, &[&upper, &lower]);
        out.push(Cut { sign, upper: upper.untag(), lower: lower.untag() });
    }
    out
}

/// All canonical trees on the given sorted leaf labels with `weight`
/// generator vertices, plus exactly one placeholder of arity `hole` when
/// requested.
pub fn enumerate_trees(alphabet: &Alphabet, leaves: &[usize], weight: usize, hole: Option<usize>) -> Vec<DecoratedTree> {
    let n = leaves.len();
    if n == 1 {
        return if weight == 0 && hole.is_none() { vec![DecoratedTree::Leaf(leaves[0])] } else { Vec::new() };
    }
    let mut roots: Vec<(Letter, usize, Option<usize>)> = Vec::new();
    if weight >= 1 {
        for l in alphabet.letters() {
            if alphabet.arity(l) <= n {
                roots.push((l, weight - 1, hole));
            }
        }
    }
    if let Some(m) = hole {
        if m <= n {
            roots.push((Letter::hole(m), weight, None));
        }
    }
    let mut out = Vec::new();
    for (letter, rest, hole_rest) in roots {
        let k = alphabet.arity(letter);
        let Ok(parts) = surjection_classes_by_size(n, k) else { continue };
        for p in parts {
            let blocks: Vec<Vec<usize>> = p.blocks().iter().map(|b| b.iter().map(|&x| leaves[x - 1]).collect()).collect();
            for kids in distribute(alphabet, &blocks, rest, hole_rest) {
                out.push(DecoratedTree::Vertex(letter, kids));
            }
        }
    }
    out
}

fn distribute(alphabet: &Alphabet, blocks: &[Vec<usize>], weight: usize, hole: Option<usize>) -> Vec<Vec<DecoratedTree>> {
    let Some((first, rest)) = blocks.split_first() else {
        return if weight == 0 && hole.is_none() { vec![Vec::new()] } else { Vec::new() };
    };
    let mut out = Vec::new();
    let cap = first.len().saturating_sub(1);
    for w in 0..=weight.min(cap) {
        let hole_choices: Vec<(Option<usize>, Option<usize>)> = match hole {
            None => vec![(None, None)],
            Some(m) => vec![(Some(m), None), (None, Some(m))],
        };
        for (here, later) in hole_choices {
            let heads = enumerate_trees(alphabet, first, w, here);
            if heads.is_empty() {
                continue;
            }
            let tails = distribute(alphabet, rest, weight - w, later);
            for h in &heads {
                for t in &tails {
                    let mut v = Vec::with_capacity(blocks.len());
                    v.push(h.clone());
                    v.extend(t.iter().cloned());
                    out.push(v);
                }
            }
        }
    }
    out
}
