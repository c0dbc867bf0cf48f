//! Recursive-descent parser for the formula surface syntax.
//!
//! ```text
//! imp   := or ('->' or)*
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := ('!' | '<>' | 'Y' | 'P') unary | 'c'<digits> | '(' imp ')'
//! ```
//!
//! Binaries associate to the left. `|` and `->` are desugared on the spot.

use super::Formula;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    SyntaxError { pos: usize, message: String },
    #[error("unknown token {text:?} at {pos}")]
    UnknownToken { pos: usize, text: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(usize),
    Not,
    And,
    Or,
    Implies,
    Diamond,
    Yesterday,
    Past,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        let single = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '¬' => Some(Tok::Not),
            '&' | '∧' => Some(Tok::And),
            '|' | '∨' => Some(Tok::Or),
            '◇' => Some(Tok::Diamond),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if c == '<' && next == Some('>') {
            out.push((pos, Tok::Diamond));
            i += 2;
            continue;
        }
        if c == '-' && next == Some('>') {
            out.push((pos, Tok::Implies));
            i += 2;
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            let tok = match word.as_str() {
                "Y" => Tok::Yesterday,
                "P" => Tok::Past,
                w if w.len() > 1 && w.starts_with('c') && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
                    match w[1..].parse::<usize>() {
                        Ok(n) if n >= 1 => Tok::Atom(n),
                        _ => {
                            return Err(ParseError::UnknownToken { pos, text: word });
                        }
                    }
                }
                _ => return Err(ParseError::UnknownToken { pos, text: word }),
            };
            out.push((pos, tok));
            continue;
        }
        return Err(ParseError::UnknownToken {
            pos,
            text: c.to_string(),
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.disjunction()?;
        while self.eat(&Tok::Implies) {
            lhs = lhs.implies(self.disjunction()?);
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Not => Ok(self.unary()?.not()),
            Tok::Diamond => Ok(self.unary()?.diamond()),
            Tok::Yesterday => Ok(self.unary()?.yesterday()),
            Tok::Past => Ok(self.unary()?.past()),
            Tok::Atom(c) => Ok(Formula::Atom(c)),
            Tok::LParen => {
                let inner = self.implication()?;
                if !self.eat(&Tok::RParen) {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            other => {
                self.at -= 1;
                self.error(format!("unexpected {other:?}"))
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
    };
    let f = p.implication()?;
    if p.at < p.toks.len() {
        return p.error("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: usize) -> Formula {
        Formula::atom(i)
    }

    #[test]
    fn figure1_formula() {
        let f = parse_formula("c1 & P c2 & <>((!c1 & c2) & Y(c1 & !c2))").unwrap();
        let expected = c(1)
            .and(c(2).past())
            .and((c(1).not().and(c(2))).and(c(1).and(c(2).not()).yesterday()).diamond());
        assert_eq!(f, expected);
    }

    #[test]
    fn prefix_chain() {
        assert_eq!(parse_formula("<> Y c1").unwrap(), c(1).yesterday().diamond());
        assert_eq!(parse_formula("◇¬c2").unwrap(), c(2).not().diamond());
    }

    #[test]
    fn dangling_operator_is_syntax_error() {
        assert!(matches!(
            parse_formula("c1 |"),
            Err(ParseError::SyntaxError { pos: 4, .. })
        ));
        assert!(matches!(parse_formula("(c1"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_formula("c1 c2"), Err(ParseError::SyntaxError { .. })));
    }

    #[test]
    fn unknown_tokens() {
        assert!(matches!(parse_formula("c0"), Err(ParseError::UnknownToken { .. })));
        assert!(matches!(parse_formula("x1 & c1"), Err(ParseError::UnknownToken { pos: 0, .. })));
        assert!(matches!(parse_formula("c1 # c2"), Err(ParseError::UnknownToken { pos: 3, .. })));
    }

    #[test]
    fn sugar_and_precedence() {
        // & binds tighter than |, which binds tighter than ->
        let f = parse_formula("c1 | c2 & c3 -> c1").unwrap();
        let expected = c(1).or(c(2).and(c(3))).implies(c(1));
        assert_eq!(f, expected);
        // left associativity
        assert_eq!(
            parse_formula("c1 -> c2 -> c3").unwrap(),
            c(1).implies(c(2)).implies(c(3))
        );
        assert_eq!(parse_formula("!c1 & c2").unwrap(), c(1).not().and(c(2)));
    }
}
