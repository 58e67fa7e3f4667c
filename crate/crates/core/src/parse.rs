//! Parser for the theory text format.
//!
//! ```text
//! file      := { stmt }
//! stmt      := facts | rule | sup
//! facts     := "facts:" [ lit { "," lit } ] "."
//! rule      := label ":" [ lit { "," lit } ] arrow lit "."
//! arrow     := "->" | "=>" | "~>"
//! sup       := label ">" label "."
//! lit       := [ "~" ] ident
//! ```
//!
//! `#` starts a comment running to end of line; whitespace is otherwise
//! insignificant. Multiple `facts:` statements union. Structural invariants
//! (label uniqueness, fact consistency, superiority acyclicity and label
//! existence) are enforced during parsing with positioned errors.

use std::collections::BTreeSet;
use std::fmt;

use crate::theory::{
    check_acyclic, is_identifier, Literal, Rule, RuleKind, Superiority, Theory, TheoryError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    DuplicateRuleLabel(String),
    InconsistentFacts(String),
    CyclicSuperiority,
    UnknownRuleLabel(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match &self.kind {
            ParseErrorKind::Syntax(m) => m.clone(),
            ParseErrorKind::DuplicateRuleLabel(l) => format!("duplicate rule label `{}`", l),
            ParseErrorKind::InconsistentFacts(a) => {
                format!("inconsistent facts: both `{}` and `~{}`", a, a)
            }
            ParseErrorKind::CyclicSuperiority => "superiority relation has a cycle".to_string(),
            ParseErrorKind::UnknownRuleLabel(l) => format!("unknown rule label `{}`", l),
        };
        write!(f, "{}:{}: {}", self.line, self.col, msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Colon,
    Comma,
    Dot,
    Gt,
    Arrow(RuleKind),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Tilde => "`~`".to_string(),
            Tok::Colon => "`:`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Dot => "`.`".to_string(),
            Tok::Gt => "`>`".to_string(),
            Tok::Arrow(k) => format!("`{}`", k.arrow()),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Lexer<'a> {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            // skip whitespace and comments
            loop {
                match self.chars.peek() {
                    Some(c) if c.is_whitespace() => {
                        self.bump();
                    }
                    Some('#') => {
                        while let Some(&c) = self.chars.peek() {
                            if c == '\n' {
                                break;
                            }
                            self.bump();
                        }
                    }
                    _ => break,
                }
            }
            let (line, col) = (self.line, self.col);
            let c = match self.chars.peek() {
                Some(&c) => c,
                None => return Ok(out),
            };
            let tok = match c {
                ':' => {
                    self.bump();
                    Tok::Colon
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                '.' => {
                    self.bump();
                    Tok::Dot
                }
                '>' => {
                    self.bump();
                    Tok::Gt
                }
                '-' => {
                    self.bump();
                    match self.bump() {
                        Some('>') => Tok::Arrow(RuleKind::Strict),
                        _ => {
                            return Err(ParseError {
                                line,
                                col,
                                kind: ParseErrorKind::Syntax("expected `->`".to_string()),
                            })
                        }
                    }
                }
                '=' => {
                    self.bump();
                    match self.bump() {
                        Some('>') => Tok::Arrow(RuleKind::Defeasible),
                        _ => {
                            return Err(ParseError {
                                line,
                                col,
                                kind: ParseErrorKind::Syntax("expected `=>`".to_string()),
                            })
                        }
                    }
                }
                '~' => {
                    self.bump();
                    if self.chars.peek() == Some(&'>') {
                        self.bump();
                        Tok::Arrow(RuleKind::Defeater)
                    } else {
                        Tok::Tilde
                    }
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' {
                            s.push(c);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(s)
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::Syntax(format!("unexpected character `{}`", other)),
                    })
                }
            };
            out.push((tok, line, col));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize, usize)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(Tok, usize, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: &str) -> ParseError {
        let (line, col) =
            self.peek()
                .map(|&(_, l, c)| (l, c))
                .unwrap_or_else(|| match self.toks.last() {
                    Some(&(_, l, c)) => (l, c + 1),
                    None => (1, 1),
                });
        ParseError {
            line,
            col,
            kind: ParseErrorKind::Syntax(msg.to_string()),
        }
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(usize, usize), ParseError> {
        match self.next() {
            Some((t, l, c)) if t == *want => Ok((l, c)),
            Some((t, l, c)) => Err(ParseError {
                line: l,
                col: c,
                kind: ParseErrorKind::Syntax(format!("expected {}, found {}", what, t.describe())),
            }),
            None => {
                self.pos = self.toks.len();
                Err(self.err_here(&format!("expected {}, found end of input", what)))
            }
        }
    }

    fn literal(&mut self) -> Result<(Literal, usize, usize), ParseError> {
        match self.next() {
            Some((Tok::Tilde, l, c)) => match self.next() {
                Some((Tok::Ident(a), _, _)) => Ok((Literal::negative(&a), l, c)),
                other => Err(self.err_at(other, "expected atom after `~`")),
            },
            Some((Tok::Ident(a), l, c)) => Ok((Literal::positive(&a), l, c)),
            other => Err(self.err_at(other, "expected literal")),
        }
    }

    fn err_at(&self, tok: Option<(Tok, usize, usize)>, msg: &str) -> ParseError {
        match tok {
            Some((t, l, c)) => ParseError {
                line: l,
                col: c,
                kind: ParseErrorKind::Syntax(format!("{}, found {}", msg, t.describe())),
            },
            None => ParseError {
                line: self.toks.last().map(|&(_, l, _)| l).unwrap_or(1),
                col: self.toks.last().map(|&(_, _, c)| c + 1).unwrap_or(1),
                kind: ParseErrorKind::Syntax(format!("{}, found end of input", msg)),
            },
        }
    }
}

/// Parses theory text, enforcing every structural invariant.
pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, pos: 0 };

    let mut facts: BTreeSet<Literal> = BTreeSet::new();
    let mut rules: Vec<Rule> = Vec::new();
    let mut labels: BTreeSet<String> = BTreeSet::new();
    let mut sup_tuples: BTreeSet<(String, String)> = BTreeSet::new();
    let mut sup_positions: Vec<(usize, usize)> = Vec::new();

    while let Some(&(ref tok, line, col)) = p.peek() {
        let head = match tok {
            Tok::Ident(s) => s.clone(),
            other => {
                return Err(ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::Syntax(format!(
                        "expected statement, found {}",
                        other.describe()
                    )),
                })
            }
        };
        p.next();
        match p.peek().map(|(t, _, _)| t.clone()) {
            Some(Tok::Colon) if head == "facts" => {
                p.next();
                // optional literal list, "." terminated
                if let Some(&(Tok::Dot, _, _)) = p.peek() {
                    p.next();
                    continue;
                }
                loop {
                    let (lit, lline, lcol) = p.literal()?;
                    if facts.contains(&lit.complement()) {
                        return Err(ParseError {
                            line: lline,
                            col: lcol,
                            kind: ParseErrorKind::InconsistentFacts(lit.atom().to_string()),
                        });
                    }
                    facts.insert(lit);
                    match p.next() {
                        Some((Tok::Comma, _, _)) => continue,
                        Some((Tok::Dot, _, _)) => break,
                        other => return Err(p.err_at(other, "expected `,` or `.`")),
                    }
                }
            }
            Some(Tok::Colon) => {
                p.next();
                if !is_identifier(&head) {
                    return Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::Syntax(format!("invalid rule label `{}`", head)),
                    });
                }
                let mut ants: Vec<Literal> = Vec::new();
                let kind = loop {
                    match p.peek().map(|(t, _, _)| t.clone()) {
                        Some(Tok::Arrow(k)) => {
                            p.next();
                            break k;
                        }
                        _ => {
                            let (lit, _, _) = p.literal()?;
                            ants.push(lit);
                            match p.peek().map(|(t, _, _)| t.clone()) {
                                Some(Tok::Comma) => {
                                    p.next();
                                }
                                Some(Tok::Arrow(_)) => {}
                                _ => {
                                    let t = p.next();
                                    return Err(p.err_at(t, "expected `,` or arrow"));
                                }
                            }
                        }
                    }
                };
                let (head_lit, _, _) = p.literal()?;
                p.expect(&Tok::Dot, "`.`")?;
                if !labels.insert(head.clone()) {
                    return Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::DuplicateRuleLabel(head),
                    });
                }
                let rule = Rule::new(&head, ants, kind, head_lit).map_err(|e| ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::Syntax(e.to_string()),
                })?;
                rules.push(rule);
            }
            Some(Tok::Gt) => {
                p.next();
                let (loser, lline, lcol) = match p.next() {
                    Some((Tok::Ident(s), l, c)) => (s, l, c),
                    other => return Err(p.err_at(other, "expected rule label after `>`")),
                };
                p.expect(&Tok::Dot, "`.`")?;
                if head == loser {
                    return Err(ParseError {
                        line: lline,
                        col: lcol,
                        kind: ParseErrorKind::Syntax(format!(
                            "reflexive superiority `{} > {}`",
                            head, loser
                        )),
                    });
                }
                sup_tuples.insert((head, loser));
                sup_positions.push((line, col));
            }
            _ => {
                let t = p.next();
                return Err(p.err_at(t, "expected `:` or `>`"));
            }
        }
    }

    // resolve superiority against the parsed rule set
    let sup = Superiority::from_tuples(sup_tuples).expect("reflexivity checked above");
    let sup_pos = sup_positions.first().copied().unwrap_or((1, 1));
    match check_acyclic(&sup, &labels) {
        Ok(true) => {}
        Ok(false) => {
            return Err(ParseError {
                line: sup_pos.0,
                col: sup_pos.1,
                kind: ParseErrorKind::CyclicSuperiority,
            })
        }
        Err(TheoryError::UnknownRuleLabel(l)) => {
            return Err(ParseError {
                line: sup_pos.0,
                col: sup_pos.1,
                kind: ParseErrorKind::UnknownRuleLabel(l),
            })
        }
        Err(e) => {
            return Err(ParseError {
                line: sup_pos.0,
                col: sup_pos.1,
                kind: ParseErrorKind::Syntax(e.to_string()),
            })
        }
    }

    Theory::new(facts, rules, sup).map_err(|e| {
        let kind = match e {
            TheoryError::DuplicateRuleLabel(l) => ParseErrorKind::DuplicateRuleLabel(l),
            TheoryError::InconsistentFacts(a) => ParseErrorKind::InconsistentFacts(a),
            TheoryError::CyclicSuperiority => ParseErrorKind::CyclicSuperiority,
            TheoryError::UnknownRuleLabel(l) => ParseErrorKind::UnknownRuleLabel(l),
            other => ParseErrorKind::Syntax(other.to_string()),
        };
        ParseError {
            line: 1,
            col: 1,
            kind,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_conflict_theory() {
        let t = parse_theory("r1: => a.\nr4: => ~a.\nr1 > r4.").unwrap();
        assert_eq!(t.rules().len(), 2);
        assert_eq!(t.superiority().len(), 1);
        assert!(t.superiority().contains("r1", "r4"));
    }

    #[test]
    fn inconsistent_facts_error() {
        let err = parse_theory("facts: a, ~a.").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::InconsistentFacts(ref a) if a == "a"));
    }

    #[test]
    fn duplicate_label_error() {
        let err = parse_theory("r: => a. r: => b.").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::DuplicateRuleLabel(ref l) if l == "r"));
    }

    #[test]
    fn cyclic_superiority_error() {
        let err = parse_theory("r1: => a. r2: => ~a. r1 > r2. r2 > r1.").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::CyclicSuperiority));
    }

    #[test]
    fn unknown_label_error() {
        let err = parse_theory("r1: => a. r1 > zz.").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownRuleLabel(ref l) if l == "zz"));
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_theory("r1: => a.\nr2 !").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn comments_and_whitespace_ignored() {
        let t = parse_theory("# header\n  r1:=>a.   # trailing\n\nfacts: b.\n").unwrap();
        assert_eq!(t.rules().len(), 1);
        assert_eq!(t.facts().len(), 1);
    }

    #[test]
    fn facts_statements_union() {
        let t = parse_theory("facts: a. facts: b, ~c.").unwrap();
        assert_eq!(t.facts().len(), 3);
    }

    #[test]
    fn empty_theory_serializes_to_facts_line() {
        let t = Theory::empty();
        assert_eq!(t.serialize(), "facts:.\n");
        assert_eq!(parse_theory(&t.serialize()).unwrap(), t);
    }

    #[test]
    fn defeater_line_round_trips_bit_exact() {
        let src = "r: a ~> ~b.";
        let t = parse_theory(src).unwrap();
        let text = t.serialize();
        assert!(text.contains("r: a ~> ~b.\n"), "got: {}", text);
        assert_eq!(parse_theory(&text).unwrap(), t);
    }

    #[test]
    fn duplicate_superiority_tuples_deduplicate() {
        let t = parse_theory("r1: => a. r2: => ~a. r1 > r2. r1 > r2.").unwrap();
        assert_eq!(t.superiority().len(), 1);
    }

    #[test]
    fn strict_arrow_parses() {
        let t = parse_theory("r: a -> b.").unwrap();
        assert_eq!(t.rules()[0].kind(), RuleKind::Strict);
    }
}
