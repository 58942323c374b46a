use rustc_hash::FxHashMap as HashMap;
use std::rc::Rc;

use thiserror::Error;

use super::Engine;
use crate::kernel::{is_lyndon_word, Alphabet, Atom, Element, Generator, LieWord, LinComb, MLetter, RAtom, Word};
use crate::linalg::span_rank;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("request too large: {0}")]
    TooLarge(String),
    #[error("invalid bounds: {0}")]
    Invalid(String),
}

const MAX_XDEG: u32 = 8;
const MAX_RDEG: u32 = 6;
const MAX_WORDS: usize = 400_000;

/// Layer index of a basis word: a generator and `Op(generator)` sit in
/// layer 1, a Lie factor sits at the largest layer of the operator atoms
/// acting inside it (at least 1), a monomial at the largest layer of its
/// factors, and `Op(w)` one above `w` unless `w` is a generator.
pub fn stratum(w: &Word) -> u32 {
    w.factors().iter().map(atom_stratum).max().unwrap_or(1)
}

fn atom_stratum(a: &Atom) -> u32 {
    match a {
        Atom::Gen(_) => 1,
        Atom::R(r) => op_stratum(r),
        Atom::Lie(l) => l
            .letters()
            .iter()
            .flat_map(|m| m.ops().iter().map(op_stratum))
            .max()
            .unwrap_or(1)
            .max(1),
    }
}

fn op_stratum(r: &RAtom) -> u32 {
    let arg = r.arg();
    match arg.factors() {
        [Atom::Gen(_)] => 1,
        _ => stratum(arg) + 1,
    }
}

type Key = (Vec<u32>, u32);

/// Exhaustive generator of basis words of fixed content and R-degree.
struct Enumerator<'a> {
    engine: &'a Engine,
    gens: Vec<Generator>,
    words: HashMap<Key, Rc<Vec<Word>>>,
    atoms: HashMap<Key, Rc<Vec<Atom>>>,
    free_ops: HashMap<Key, Rc<Vec<RAtom>>>,
    mletters: HashMap<Key, Rc<Vec<MLetter>>>,
    produced: usize,
}

fn sub_contents(c: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &ci in c {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=ci).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out.retain(|d| d.iter().any(|&k| k > 0));
    out
}

fn minus(c: &[u32], d: &[u32]) -> Vec<u32> {
    c.iter().zip(d).map(|(a, b)| a - b).collect()
}

fn is_zero(c: &[u32]) -> bool {
    c.iter().all(|&k| k == 0)
}

impl<'a> Enumerator<'a> {
    fn bump(&mut self, n: usize) -> Result<(), BoundsError> {
        self.produced += n;
        if self.produced > MAX_WORDS {
            return Err(BoundsError::TooLarge(format!("more than {MAX_WORDS} words")));
        }
        Ok(())
    }

    fn words(&mut self, c: &[u32], r: u32) -> Result<Rc<Vec<Word>>, BoundsError> {
        let key = (c.to_vec(), r);
        if let Some(v) = self.words.get(&key) {
            return Ok(v.clone());
        }
        // Candidate factors, largest first.
        let mut pool: Vec<(Vec<u32>, u32, Atom)> = Vec::new();
        for d in sub_contents(c) {
            for s in 0..=r {
                for a in self.atoms(&d, s)?.iter() {
                    pool.push((d.clone(), s, a.clone()));
                }
            }
        }
        pool.sort_by(|a, b| b.2.cmp(&a.2));
        let mut out = Vec::new();
        let mut cur = Vec::new();
        pick(&pool, 0, c.to_vec(), r, false, &mut cur, &mut out);
        self.bump(out.len())?;
        let v = Rc::new(out);
        self.words.insert(key, v.clone());
        Ok(v)
    }

    fn atoms(&mut self, c: &[u32], r: u32) -> Result<Rc<Vec<Atom>>, BoundsError> {
        let key = (c.to_vec(), r);
        if let Some(v) = self.atoms.get(&key) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        let total: u32 = c.iter().sum();
        if r == 0 && total == 1 {
            let i = c.iter().position(|&k| k == 1).unwrap();
            out.push(Atom::Gen(self.gens[i].clone()));
        }
        if r >= 1 {
            for w in self.words(c, r - 1)?.iter() {
                out.push(Atom::R(RAtom::new(w.clone())));
            }
        }
        for l in self.lyndon(c, r)? {
            if l.letters().len() > 1 || !l.letters()[0].is_generator() {
                out.push(Atom::Lie(l));
            }
        }
        let v = Rc::new(out);
        self.atoms.insert(key, v.clone());
        Ok(v)
    }

    fn free_ops(&mut self, c: &[u32], r: u32) -> Result<Rc<Vec<RAtom>>, BoundsError> {
        let key = (c.to_vec(), r);
        if let Some(v) = self.free_ops.get(&key) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        if r >= 1 {
            for w in self.words(c, r - 1)?.iter() {
                let a = RAtom::new(w.clone());
                if !self.engine.is_expressible(&a) {
                    out.push(a);
                }
            }
        }
        let v = Rc::new(out);
        self.free_ops.insert(key, v.clone());
        Ok(v)
    }

    fn mletters(&mut self, c: &[u32], r: u32) -> Result<Rc<Vec<MLetter>>, BoundsError> {
        let key = (c.to_vec(), r);
        if let Some(v) = self.mletters.get(&key) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let mut rest = c.to_vec();
            rest[i] -= 1;
            let mut pool: Vec<(Vec<u32>, u32, RAtom)> = Vec::new();
            for d in sub_contents(&rest) {
                for s in 1..=r {
                    for a in self.free_ops(&d, s)?.iter() {
                        pool.push((d.clone(), s, a.clone()));
                    }
                }
            }
            pool.sort_by(|a, b| b.2.cmp(&a.2));
            let mut sets = Vec::new();
            pick_ops(&pool, 0, rest, r, &mut Vec::new(), &mut sets);
            for ops in sets {
                out.push(MLetter::new(ops, self.gens[i].clone()));
            }
        }
        let v = Rc::new(out);
        self.mletters.insert(key, v.clone());
        Ok(v)
    }

    fn lyndon(&mut self, c: &[u32], r: u32) -> Result<Vec<LieWord>, BoundsError> {
        let mut seqs = Vec::new();
        self.sequences(c, r, &mut Vec::new(), &mut seqs)?;
        Ok(seqs
            .into_iter()
            .filter(|s| is_lyndon_word(s))
            .map(|s| LieWord::new(s).expect("filtered"))
            .collect())
    }

    fn sequences(
        &mut self,
        c: &[u32],
        r: u32,
        cur: &mut Vec<MLetter>,
        out: &mut Vec<Vec<MLetter>>,
    ) -> Result<(), BoundsError> {
        if is_zero(c) {
            if r == 0 && !cur.is_empty() {
                out.push(cur.clone());
            }
            return Ok(());
        }
        for d in sub_contents(c) {
            for s in 0..=r {
                let ms = self.mletters(&d, s)?;
                // A Lyndon word starts with its smallest letter.
                let first = cur.first().cloned();
                for m in ms.iter().filter(|m| first.as_ref().map_or(true, |f| *m >= f)) {
                    cur.push(m.clone());
                    self.sequences(&minus(c, &d), r - s, cur, out)?;
                    cur.pop();
                }
            }
        }
        Ok(())
    }
}

fn pick(
    pool: &[(Vec<u32>, u32, Atom)],
    from: usize,
    c: Vec<u32>,
    r: u32,
    has_op: bool,
    cur: &mut Vec<Atom>,
    out: &mut Vec<Word>,
) {
    if is_zero(&c) {
        if r == 0 && !cur.is_empty() {
            out.push(Word::new(cur.clone()).expect("enumerated words are valid"));
        }
        return;
    }
    for i in from..pool.len() {
        let (d, s, a) = &pool[i];
        let op = a.as_r().is_some();
        if *s > r || (op && has_op) || d.iter().zip(&c).any(|(x, y)| x > y) {
            continue;
        }
        cur.push(a.clone());
        pick(pool, i, minus(&c, d), r - s, has_op || op, cur, out);
        cur.pop();
    }
}

fn pick_ops(
    pool: &[(Vec<u32>, u32, RAtom)],
    from: usize,
    c: Vec<u32>,
    r: u32,
    cur: &mut Vec<RAtom>,
    out: &mut Vec<Vec<RAtom>>,
) {
    if is_zero(&c) {
        if r == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for i in from..pool.len() {
        let (d, s, a) = &pool[i];
        if *s > r || d.iter().zip(&c).any(|(x, y)| x > y) {
            continue;
        }
        cur.push(a.clone());
        pick_ops(pool, i, minus(&c, d), r - s, cur, out);
        cur.pop();
    }
}

impl Engine {
    /// All basis words over `alphabet` with X-degree in `1..=max_xdeg` and
    /// R-degree at most `max_rdeg`, ascending. With `multilinear`, exactly
    /// the words using every generator once (`max_xdeg` is then ignored).
    pub fn enumerate_basis(
        &self,
        alphabet: &Alphabet,
        max_xdeg: u32,
        max_rdeg: u32,
        multilinear: bool,
    ) -> Result<Vec<Word>, BoundsError> {
        let n = alphabet.len();
        let xdeg = if multilinear { n as u32 } else { max_xdeg };
        if xdeg > MAX_XDEG || max_rdeg > MAX_RDEG {
            return Err(BoundsError::TooLarge(format!(
                "X-degree {xdeg} / R-degree {max_rdeg} beyond {MAX_XDEG} / {MAX_RDEG}"
            )));
        }
        let mut en = Enumerator {
            engine: self,
            gens: alphabet.iter().cloned().collect(),
            words: HashMap::default(),
            atoms: HashMap::default(),
            free_ops: HashMap::default(),
            mletters: HashMap::default(),
            produced: 0,
        };
        let contents: Vec<Vec<u32>> = if multilinear {
            if n == 0 {
                Vec::new()
            } else {
                vec![vec![1; n]]
            }
        } else {
            sub_contents(&vec![xdeg; n])
                .into_iter()
                .filter(|c| c.iter().sum::<u32>() <= xdeg)
                .collect()
        };
        let mut out = Vec::new();
        for c in contents {
            for r in 0..=max_rdeg {
                out.extend(en.words(&c, r)?.iter().cloned());
            }
        }
        out.sort();
        Ok(out)
    }

    /// Dimension of the span of all multilinear compositions of
    /// `a∘b = Op(a)·b` and `a⋆b = [Op(a),b]` on `n` generators.
    pub fn pre_post_span_dim(&self, n: usize, rdeg_cap: u32) -> Result<usize, BoundsError> {
        if n == 0 {
            return Err(BoundsError::Invalid("need at least one generator".into()));
        }
        if n > 4 {
            return Err(BoundsError::TooLarge(format!("{n} generators (at most 4)")));
        }
        if (n - 1) as u32 > rdeg_cap {
            return Err(BoundsError::Invalid(format!(
                "{n} leaves need R-degree {} but the cap is {rdeg_cap}",
                n - 1
            )));
        }
        let alphabet = Alphabet::indexed(n);
        let leaves: Vec<usize> = (0..n).collect();
        let family = self.compositions(&alphabet, &leaves);
        Ok(span_rank(&family))
    }

    fn compositions(&self, alphabet: &Alphabet, leaves: &[usize]) -> Vec<Element> {
        if leaves.len() == 1 {
            return vec![LinComb::from_term(Word::generator(alphabet.by_rank(leaves[0]).clone()))];
        }
        let mut out = Vec::new();
        // Every ordered split into two nonempty parts.
        for mask in 1..(1u32 << leaves.len()) - 1 {
            let a: Vec<usize> = (0..leaves.len()).filter(|i| mask & (1 << i) != 0).map(|i| leaves[i]).collect();
            let b: Vec<usize> = (0..leaves.len()).filter(|i| mask & (1 << i) == 0).map(|i| leaves[i]).collect();
            let left = self.compositions(alphabet, &a);
            let right = self.compositions(alphabet, &b);
            for ta in &left {
                let ra = self.apply(ta);
                for tb in &right {
                    out.push(self.mul(&ra, tb));
                    out.push(self.bracket(&ra, tb));
                }
            }
        }
        out
    }
}
