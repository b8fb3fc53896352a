//! Formula ASTs for the sentential languages, with a fixed concrete syntax:
//! precedence ~ > & > |, both binary connectives left-associative.
//!
//! The same type doubles as the witness-term language for generated
//! subalgebras, with Var(i) read as "generator i".

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(usize),
    Const0,
    Const1,
    ConstN,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Formula::Var(i) => Some(*i),
            Formula::Const0 | Formula::Const1 | Formula::ConstN => None,
            Formula::Not(f) => f.max_var(),
            Formula::And(f, g) | Formula::Or(f, g) => f.max_var().max(g.max_var()),
        }
    }

    pub fn uses_n(&self) -> bool {
        match self {
            Formula::ConstN => true,
            Formula::Var(_) | Formula::Const0 | Formula::Const1 => false,
            Formula::Not(f) => f.uses_n(),
            Formula::And(f, g) | Formula::Or(f, g) => f.uses_n() || g.uses_n(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const0 | Formula::Const1 | Formula::ConstN => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(f, g) | Formula::Or(f, g) => 1 + f.depth().max(g.depth()),
        }
    }
}

// precedence levels: | = 1, & = 2, ~/atoms = 3
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

fn write_at(f: &Formula, parent: u8, right_operand: bool, out: &mut String) {
    let p = prec(f);
    // same-precedence right operands need parens to survive the round trip
    let need = p < parent || (p == parent && right_operand && p < 3);
    if need {
        out.push('(');
    }
    match f {
        Formula::Var(i) => out.push_str(&format!("p{i}")),
        Formula::Const0 => out.push('0'),
        Formula::Const1 => out.push('1'),
        Formula::ConstN => out.push('n'),
        Formula::Not(g) => {
            out.push('~');
            write_at(g, 3, false, out);
        }
        Formula::And(g, h) => {
            write_at(g, 2, false, out);
            out.push_str(" & ");
            write_at(h, 2, true, out);
        }
        Formula::Or(g, h) => {
            write_at(g, 1, false, out);
            out.push_str(" | ");
            write_at(h, 1, true, out);
        }
    }
    if need {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_at(self, 0, false, &mut out);
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicKind {
    Classical,
    Kleene,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character {0:?} at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("variable p{0} out of range for arity {1}")]
    VarOutOfRange(usize, usize),
    #[error("constant 'n' is not part of the classical language")]
    NInClassical,
    #[error("trailing input at byte {0}")]
    Trailing(usize),
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    arity: usize,
    kind: LogicKind,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            f = Formula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.neg()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            f = Formula::and(f, self.neg()?);
        }
        Ok(f)
    }

    fn neg(&mut self) -> Result<Formula, ParseError> {
        if self.peek() == Some(b'~') {
            self.pos += 1;
            return Ok(Formula::not(self.neg()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().ok_or(ParseError::UnexpectedEnd)? {
            b'0' => {
                self.pos += 1;
                Ok(Formula::Const0)
            }
            b'1' => {
                self.pos += 1;
                Ok(Formula::Const1)
            }
            b'n' => {
                self.pos += 1;
                if self.kind == LogicKind::Classical {
                    return Err(ParseError::NInClassical);
                }
                Ok(Formula::ConstN)
            }
            b'p' => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos == start {
                    let c = self.bytes.get(self.pos).map(|&b| b as char).unwrap_or(' ');
                    return Err(ParseError::UnexpectedChar(c, self.pos));
                }
                let idx: usize = std::str::from_utf8(&self.bytes[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| ParseError::VarOutOfRange(usize::MAX, self.arity))?;
                if idx >= self.arity {
                    return Err(ParseError::VarOutOfRange(idx, self.arity));
                }
                Ok(Formula::Var(idx))
            }
            b'(' => {
                self.pos += 1;
                let f = self.disj()?;
                if self.peek() != Some(b')') {
                    return match self.peek() {
                        None => Err(ParseError::UnexpectedEnd),
                        Some(b) => Err(ParseError::UnexpectedChar(b as char, self.pos)),
                    };
                }
                self.pos += 1;
                Ok(f)
            }
            b => Err(ParseError::UnexpectedChar(b as char, self.pos)),
        }
    }
}

pub fn parse(text: &str, arity: usize, kind: LogicKind) -> Result<Formula, ParseError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0, arity, kind };
    let f = p.disj()?;
    if p.peek().is_some() {
        return Err(ParseError::Trailing(p.pos));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula::*;

    fn k(text: &str) -> Formula {
        parse(text, 9, LogicKind::Kleene).unwrap()
    }

    #[test]
    fn grammar_instances() {
        assert_eq!(k("~p0 & p1"), Formula::and(Formula::not(Var(0)), Var(1)));
        assert_eq!(
            k("p0 | p1 & p2"),
            Formula::or(Var(0), Formula::and(Var(1), Var(2)))
        );
        assert_eq!(k("(p0 | p1) & p2"), Formula::and(Formula::or(Var(0), Var(1)), Var(2)));
        assert_eq!(k("p0 & p1 & p2"), k("(p0 & p1) & p2")); // left-assoc
    }

    #[test]
    fn constants_and_guards() {
        assert_eq!(k("0"), Const0);
        assert_eq!(k("n"), ConstN);
        assert_eq!(
            parse("n", 1, LogicKind::Classical),
            Err(ParseError::NInClassical)
        );
        assert_eq!(
            parse("p3", 2, LogicKind::Kleene),
            Err(ParseError::VarOutOfRange(3, 2))
        );
        assert!(matches!(parse("p0 p1", 2, LogicKind::Kleene), Err(ParseError::Trailing(_))));
        assert!(matches!(parse("", 1, LogicKind::Kleene), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(parse("p0 &", 1, LogicKind::Kleene), Err(ParseError::UnexpectedEnd)));
    }

    #[test]
    fn printer_minimal_parens() {
        assert_eq!(k("p0 | p1 & p2").to_string(), "p0 | p1 & p2");
        assert_eq!(k("(p0 | p1) & p2").to_string(), "(p0 | p1) & p2");
        assert_eq!(k("~(p0 | p1)").to_string(), "~(p0 | p1)");
        assert_eq!(k("~~p0").to_string(), "~~p0");
        // right-nested same-op children keep their parens
        let right = Formula::or(Var(0), Formula::or(Var(1), Var(2)));
        assert_eq!(right.to_string(), "p0 | (p1 | p2)");
    }

    #[test]
    fn parse_print_round_trip() {
        for text in ["p0", "~p0 & p1", "p0 | (p1 | p2)", "n & ~0 | 1", "~(p0 & ~p1) | n"] {
            let f = k(text);
            assert_eq!(parse(&f.to_string(), 9, LogicKind::Kleene).unwrap(), f);
        }
    }

    #[test]
    fn structural_helpers() {
        let f = k("~(p0 & ~p2) | n");
        assert_eq!(f.max_var(), Some(2));
        assert!(f.uses_n());
        assert_eq!(k("0").depth(), 0);
        assert_eq!(k("~p0 & p1").depth(), 2);
    }
}
