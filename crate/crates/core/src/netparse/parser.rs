use std::collections::BTreeMap;
use std::iter::Peekable;
use std::str::Chars;

use super::{BoolExpr, NetworkFile, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    /// `x<digits>`, index kept as text until range-checked.
    Var(String),
    /// The width header keyword `n`.
    Width,
    Number(String),
    Eq,
    Not,
    And,
    Xor,
    Or,
    LParen,
    RParen,
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: Peekable<Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
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

    fn digits(&mut self) -> String {
        let mut out = String::new();
        while let Some(&c) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn tokens(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            let (line, col) = (self.line, self.col);
            let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line, col });
            let Some(&c) = self.chars.peek() else {
                push(&mut out, Tok::Eof);
                return Ok(out);
            };
            match c {
                '\n' => {
                    self.bump();
                    push(&mut out, Tok::Newline);
                }
                '#' => {
                    while matches!(self.chars.peek(), Some(&c) if c != '\n') {
                        self.bump();
                    }
                }
                c if c.is_whitespace() => {
                    self.bump();
                }
                '=' | '!' | '&' | '^' | '|' | '(' | ')' => {
                    self.bump();
                    let tok = match c {
                        '=' => Tok::Eq,
                        '!' => Tok::Not,
                        '&' => Tok::And,
                        '^' => Tok::Xor,
                        '|' => Tok::Or,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    };
                    push(&mut out, tok);
                }
                'x' => {
                    self.bump();
                    let digits = self.digits();
                    if digits.is_empty() {
                        return Err(ParseError::Syntax {
                            line,
                            col,
                            message: "expected a coordinate index after 'x'".into(),
                        });
                    }
                    push(&mut out, Tok::Var(digits));
                }
                'n' => {
                    self.bump();
                    push(&mut out, Tok::Width);
                }
                c if c.is_ascii_digit() => {
                    let digits = self.digits();
                    push(&mut out, Tok::Number(digits));
                }
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Var(d) => format!("'x{d}'"),
        Tok::Width => "'n'".into(),
        Tok::Number(d) => format!("'{d}'"),
        Tok::Eq => "'='".into(),
        Tok::Not => "'!'".into(),
        Tok::And => "'&'".into(),
        Tok::Xor => "'^'".into(),
        Tok::Or => "'|'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// A variable reference recorded for the later width check.
struct VarUse {
    index: usize,
    line: usize,
    col: usize,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    uses: Vec<VarUse>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, token: &Token, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            line: token.line,
            col: token.col,
            message: format!("expected {expected}, found {}", describe(&token.tok)),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            self.error(&t, expected)
        }
    }

    fn index(token: &Token, digits: &str) -> Result<usize, ParseError> {
        match digits.parse::<usize>() {
            Ok(i) if i >= 1 && i <= u32::MAX as usize => Ok(i),
            _ => Err(ParseError::OutOfRange {
                line: token.line,
                col: token.col,
                text: digits.to_string(),
            }),
        }
    }

    // or := xor ('|' xor)*
    fn expr(&mut self) -> Result<BoolExpr, ParseError> {
        let mut lhs = self.xor()?;
        while self.peek().tok == Tok::Or {
            self.next();
            lhs = BoolExpr::or(lhs, self.xor()?);
        }
        Ok(lhs)
    }

    fn xor(&mut self) -> Result<BoolExpr, ParseError> {
        let mut lhs = self.and()?;
        while self.peek().tok == Tok::Xor {
            self.next();
            lhs = BoolExpr::xor(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<BoolExpr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::And {
            self.next();
            lhs = BoolExpr::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<BoolExpr, ParseError> {
        if self.peek().tok == Tok::Not {
            self.next();
            return Ok(BoolExpr::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<BoolExpr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Number(d) if d == "0" => Ok(BoolExpr::Const(false)),
            Tok::Number(d) if d == "1" => Ok(BoolExpr::Const(true)),
            Tok::Var(d) => {
                let index = Self::index(&t, d)?;
                self.uses.push(VarUse {
                    index,
                    line: t.line,
                    col: t.col,
                });
                Ok(BoolExpr::Var(index))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => self.error(&t, "'0', '1', a variable or '('"),
        }
    }

    fn end_of_line(&mut self) -> Result<(), ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Newline | Tok::Eof => Ok(()),
            _ => self.error(&t, "end of line"),
        }
    }
}

/// Parses a network file.
pub fn parse_network(text: &str) -> Result<NetworkFile, ParseError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut p = Parser {
        tokens,
        pos: 0,
        uses: Vec::new(),
    };
    let mut declared: Option<usize> = None;
    let mut defined: BTreeMap<usize, BoolExpr> = BTreeMap::new();

    loop {
        let t = p.next();
        match &t.tok {
            Tok::Eof => break,
            Tok::Newline => continue,
            Tok::Width => {
                p.expect(Tok::Eq, "'='")?;
                let value = p.next();
                let Tok::Number(d) = &value.tok else {
                    return p.error(&value, "the number of coordinates");
                };
                let width = Parser::index(&value, d)?;
                if declared.is_some() {
                    return Err(ParseError::Syntax {
                        line: t.line,
                        col: t.col,
                        message: "width declared twice".into(),
                    });
                }
                declared = Some(width);
                p.end_of_line()?;
            }
            Tok::Var(d) => {
                let index = Parser::index(&t, d)?;
                p.expect(Tok::Eq, "'='")?;
                let e = p.expr()?;
                p.end_of_line()?;
                if defined.insert(index, e).is_some() {
                    return Err(ParseError::Duplicate {
                        line: t.line,
                        col: t.col,
                        index,
                    });
                }
            }
            _ => return p.error(&t, "an equation 'x<i> = …' or 'n = <int>'"),
        }
    }

    let highest = defined
        .keys()
        .copied()
        .chain(p.uses.iter().map(|u| u.index))
        .max()
        .unwrap_or(0);
    let width = match declared {
        Some(width) => {
            if let Some(u) = p.uses.iter().find(|u| u.index > width) {
                return Err(ParseError::UnknownVariable {
                    line: u.line,
                    col: u.col,
                    index: u.index,
                    width,
                });
            }
            if let Some((&index, _)) = defined.range(width + 1..).next() {
                let (line, col) = defined_at(&p.tokens, index);
                return Err(ParseError::UnknownVariable {
                    line,
                    col,
                    index,
                    width,
                });
            }
            width
        }
        None => highest,
    };
    if width == 0 {
        return Err(ParseError::Syntax {
            line: 1,
            col: 1,
            message: "no equations".into(),
        });
    }
    // keys are sorted, so the first gap in 1, 2, … is the first missing index
    let mut expected = 1;
    for &index in defined.keys() {
        if index != expected {
            break;
        }
        expected += 1;
    }
    if expected <= width {
        return Err(ParseError::Missing { index: expected });
    }
    Ok(NetworkFile {
        width,
        equations: defined.into_values().collect(),
    })
}

fn defined_at(tokens: &[Token], index: usize) -> (usize, usize) {
    tokens
        .windows(2)
        .find(|w| matches!(&w[0].tok, Tok::Var(d) if d.parse() == Ok(index)) && w[1].tok == Tok::Eq)
        .map(|w| (w[0].line, w[0].col))
        .unwrap_or((1, 1))
}
