//! Regular expressions over a generator alphabet.
//!
//! Syntax: letters of the alphabet, `.` (any letter), classes `[aT]` and
//! `[^a]`, grouping, `|` (an empty branch is the empty word), and the
//! postfix operators `*`, `+`, `?`. Spaces are ignored. `$` is reserved.

use super::nfa::Nfa;
use super::{AutomataError, Fsa};
use crate::words::{Alphabet, Letter};

enum Ast {
    Set(Vec<Letter>),
    Cat(Vec<Ast>),
    Alt(Vec<Ast>),
    Star(Box<Ast>),
    Plus(Box<Ast>),
    Opt(Box<Ast>),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn err(&self, reason: impl Into<String>) -> AutomataError {
        let position = self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |&(o, _)| o + 1),
            |&(o, _)| o,
        );
        AutomataError::MalformedPattern { position, reason: reason.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn letter(&self, c: char) -> Result<Letter, AutomataError> {
        if c == '$' {
            return Err(self.err("'$' is the reserved pad symbol"));
        }
        match Letter::new(c) {
            Some(l) if self.alphabet.contains(l) => Ok(l),
            _ => Err(self.err(format!("{c:?} is not a letter of the alphabet"))),
        }
    }

    fn alt(&mut self) -> Result<Ast, AutomataError> {
        let mut branches = vec![self.cat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.cat()?);
        }
        Ok(if branches.len() == 1 { branches.pop().unwrap() } else { Ast::Alt(branches) })
    }

    fn cat(&mut self) -> Result<Ast, AutomataError> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let mut atom = self.atom()?;
            while let Some(op) = self.peek() {
                atom = match op {
                    '*' => Ast::Star(Box::new(atom)),
                    '+' => Ast::Plus(Box::new(atom)),
                    '?' => Ast::Opt(Box::new(atom)),
                    _ => break,
                };
                self.pos += 1;
            }
            items.push(atom);
        }
        Ok(Ast::Cat(items))
    }

    fn atom(&mut self) -> Result<Ast, AutomataError> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of pattern"))?;
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.err("unclosed '('"));
                }
                self.pos += 1;
                Ok(inner)
            }
            '.' => {
                self.pos += 1;
                Ok(Ast::Set(self.alphabet.letters()))
            }
            '[' => {
                self.pos += 1;
                let negated = self.peek() == Some('^');
                if negated {
                    self.pos += 1;
                }
                let mut members = Vec::new();
                loop {
                    match self.peek() {
                        None => return Err(self.err("unclosed '['")),
                        Some(']') => break,
                        Some(c) => {
                            members.push(self.letter(c)?);
                            self.pos += 1;
                        }
                    }
                }
                self.pos += 1;
                let set = if negated {
                    self.alphabet.letters().into_iter().filter(|l| !members.contains(l)).collect()
                } else {
                    members
                };
                Ok(Ast::Set(set))
            }
            '*' | '+' | '?' => Err(self.err(format!("{c:?} has nothing to repeat"))),
            _ => {
                let l = self.letter(c)?;
                self.pos += 1;
                Ok(Ast::Set(vec![l]))
            }
        }
    }
}

// Thompson construction; returns (entry, exit) of the fragment.
fn build(nfa: &mut Nfa<Letter>, ast: &Ast) -> (usize, usize) {
    let entry = nfa.add_state();
    let exit = nfa.add_state();
    match ast {
        Ast::Set(letters) => {
            for l in letters {
                let si = nfa.symbols.iter().position(|x| x == l).expect("letter in alphabet");
                nfa.add_edge(entry, Some(si), exit);
            }
        }
        Ast::Cat(items) => {
            let mut cur = entry;
            for it in items {
                let (a, b) = build(nfa, it);
                nfa.add_edge(cur, None, a);
                cur = b;
            }
            nfa.add_edge(cur, None, exit);
        }
        Ast::Alt(branches) => {
            for br in branches {
                let (a, b) = build(nfa, br);
                nfa.add_edge(entry, None, a);
                nfa.add_edge(b, None, exit);
            }
        }
        Ast::Star(inner) | Ast::Plus(inner) | Ast::Opt(inner) => {
            let (a, b) = build(nfa, inner);
            nfa.add_edge(entry, None, a);
            nfa.add_edge(b, None, exit);
            if !matches!(ast, Ast::Plus(_)) {
                nfa.add_edge(entry, None, exit);
            }
            if !matches!(ast, Ast::Opt(_)) {
                nfa.add_edge(b, None, a);
            }
        }
    }
    (entry, exit)
}

/// Compiles a pattern into a complete DFA over all letters of `alphabet`.
pub fn from_regex(pattern: &str, alphabet: &Alphabet) -> Result<Fsa<Letter>, AutomataError> {
    let chars = pattern.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut parser = Parser { chars, pos: 0, alphabet };
    let ast = parser.alt()?;
    if parser.pos < parser.chars.len() {
        return Err(parser.err("unbalanced ')'"));
    }
    let mut nfa = Nfa::new(alphabet.letters());
    let (entry, exit) = build(&mut nfa, &ast);
    nfa.start = entry;
    nfa.accepting[exit] = true;
    Ok(nfa.determinize())
}
