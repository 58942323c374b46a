//! Versioned JSON form of words and elements.
//!
//! A word is `{"factors": [atom…]}`; an atom is `{"kind", "payload"}` with
//! kind `gen` (payload: symbol), `lie` (payload: letters, each
//! `{"ops": [word…], "base": symbol}` where each op is given by its
//! argument) or `op` (payload: the argument word).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{Atom, Element, Generator, KernelError, LieWord, MLetter, RAtom, Scalar, Word};
use crate::kernel::{fmt_scalar, parse_scalar};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordJson {
    pub factors: Vec<AtomJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum AtomJson {
    Gen(String),
    Lie(Vec<LetterJson>),
    Op(WordJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LetterJson {
    pub ops: Vec<WordJson>,
    pub base: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: WordJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub schema: u32,
    pub operator: String,
    /// Symbol to rank.
    pub generators: BTreeMap<String, u32>,
    /// Descending in the word order.
    pub terms: Vec<TermJson>,
}

pub fn word_to_json(w: &Word) -> WordJson {
    WordJson { factors: w.factors().iter().map(atom_to_json).collect() }
}

fn atom_to_json(a: &Atom) -> AtomJson {
    match a {
        Atom::Gen(g) => AtomJson::Gen(g.symbol().to_string()),
        Atom::Lie(l) => AtomJson::Lie(
            l.letters()
                .iter()
                .map(|m| LetterJson {
                    ops: m.ops().iter().map(|r| word_to_json(r.arg())).collect(),
                    base: m.base().symbol().to_string(),
                })
                .collect(),
        ),
        Atom::R(r) => AtomJson::Op(word_to_json(r.arg())),
    }
}

pub fn element_to_json(c: &Element, symbol: char) -> ElementJson {
    let mut gens = Vec::new();
    for (w, _) in c.iter() {
        w.collect_generators(&mut gens);
    }
    ElementJson {
        schema: SCHEMA_VERSION,
        operator: symbol.to_string(),
        generators: gens.into_iter().map(|g| (g.symbol().to_string(), g.rank())).collect(),
        terms: c
            .sorted_terms()
            .into_iter()
            .map(|(w, s)| TermJson { coeff: fmt_scalar(s), word: word_to_json(w) })
            .collect(),
    }
}

pub fn element_to_string(c: &Element, symbol: char) -> String {
    serde_json::to_string(&element_to_json(c, symbol)).expect("serializable")
}

struct Decoder<'a> {
    gens: &'a BTreeMap<String, u32>,
}

impl Decoder<'_> {
    fn gen(&self, s: &str) -> Result<Generator, JsonError> {
        let r = self.gens.get(s).ok_or_else(|| JsonError::UnknownGenerator(s.to_string()))?;
        Ok(Generator::new(*r, s))
    }

    fn word(&self, w: &WordJson) -> Result<Word, JsonError> {
        let factors = w.factors.iter().map(|a| self.atom(a)).collect::<Result<Vec<_>, _>>()?;
        Ok(Word::new(factors)?)
    }

    fn atom(&self, a: &AtomJson) -> Result<Atom, JsonError> {
        Ok(match a {
            AtomJson::Gen(s) => Atom::Gen(self.gen(s)?),
            AtomJson::Lie(ls) => {
                let letters = ls
                    .iter()
                    .map(|l| {
                        let ops = l.ops.iter().map(|o| Ok(RAtom::new(self.word(o)?))).collect::<Result<Vec<_>, JsonError>>()?;
                        Ok(MLetter::new(ops, self.gen(&l.base)?))
                    })
                    .collect::<Result<Vec<_>, JsonError>>()?;
                Atom::Lie(LieWord::new(letters)?)
            }
            AtomJson::Op(w) => Atom::R(RAtom::new(self.word(w)?)),
        })
    }
}

/// Rebuilds an element. Structural validity is checked here; normal-form
/// validity against an engine is left to `Engine::validate`.
pub fn element_from_json(j: &ElementJson) -> Result<Element, JsonError> {
    if j.schema != SCHEMA_VERSION {
        return Err(JsonError::Version(j.schema));
    }
    let d = Decoder { gens: &j.generators };
    let mut out = Element::zero();
    for t in &j.terms {
        let c: Scalar = parse_scalar(&t.coeff)?;
        out.add_term(d.word(&t.word)?, c);
    }
    Ok(out)
}

pub fn element_from_str(s: &str) -> Result<Element, JsonError> {
    element_from_json(&serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Alphabet;
    use crate::poisrb::Engine;
    use crate::syntax::normalize_in;

    #[test]
    fn round_trip() {
        let e = Engine::rota_baxter(crate::kernel::scalar(1));
        let abc = Alphabet::new(["x", "y", "z"]).unwrap();
        for src in ["R(x)*R(x)", "[R(R(x)*x),y]", "[x,[y,R(z)]]*R(y) - 3/2*z", "0"] {
            let c = normalize_in(&e, &abc, src).unwrap();
            let s = element_to_string(&c, 'R');
            assert_eq!(element_from_str(&s).unwrap(), c, "{s}");
            assert_eq!(element_to_string(&element_from_str(&s).unwrap(), 'R'), s);
        }
    }

    #[test]
    fn atom_shape() {
        let g = Generator::new(0, "x");
        let v = serde_json::to_value(word_to_json(&Word::generator(g))).unwrap();
        assert_eq!(v, serde_json::json!({"factors": [{"kind": "gen", "payload": "x"}]}));
    }
}
