use crate::error::{Error, Result};
use crate::logic::formula::{is_valid_atom_name, Atom, Formula};

/// Parses the textual formula grammar.
///
/// Precedence, tightest first: `!`, `&`, `|`, `->`, `<->`; `->` associates
/// to the right. `T` and `F` denote the constants; whitespace is ignored.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut parser = Parser { tokens, pos: 0 };
    let formula = parser.iff()?;
    match parser.peek() {
        None => Ok(formula),
        Some(t) => Err(t.error("unexpected trailing input")),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    LParen,
    RParen,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    Top,
    Bottom,
    Ident(String),
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    col: usize,
}

impl Token {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.to_string(),
        }
    }
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut lx = Lexer {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();

    while let Some(c) = lx.peek() {
        let (tok_line, tok_col) = (lx.line, lx.col);
        let kind = match c {
            c if c.is_whitespace() => {
                lx.bump();
                continue;
            }
            '(' => {
                lx.bump();
                TokenKind::LParen
            }
            ')' => {
                lx.bump();
                TokenKind::RParen
            }
            '!' => {
                lx.bump();
                TokenKind::Bang
            }
            '&' => {
                lx.bump();
                TokenKind::Amp
            }
            '|' => {
                lx.bump();
                TokenKind::Pipe
            }
            '-' => {
                lx.bump();
                if lx.peek() == Some('>') {
                    lx.bump();
                    TokenKind::Arrow
                } else {
                    return Err(lx.error(tok_line, tok_col, "expected `->`"));
                }
            }
            '<' => {
                lx.bump();
                if lx.peek() == Some('-') {
                    lx.bump();
                    if lx.peek() == Some('>') {
                        lx.bump();
                        TokenKind::DoubleArrow
                    } else {
                        return Err(lx.error(tok_line, tok_col, "expected `<->`"));
                    }
                } else {
                    return Err(lx.error(tok_line, tok_col, "expected `<->`"));
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(c) = lx.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        lx.bump();
                    } else {
                        break;
                    }
                }
                match name.as_str() {
                    "T" => TokenKind::Top,
                    "F" => TokenKind::Bottom,
                    _ => TokenKind::Ident(name),
                }
            }
            other => {
                return Err(lx.error(tok_line, tok_col, format!("unexpected character `{other}`")));
            }
        };
        tokens.push(Token {
            kind,
            line: tok_line,
            col: tok_col,
        });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn end_error(&self, msg: &str) -> Error {
        match self.tokens.last() {
            Some(t) => Error::Syntax {
                line: t.line,
                col: t.col + 1,
                msg: msg.to_string(),
            },
            None => Error::EmptyInput,
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut formula = self.imp()?;
        while self.eat(&TokenKind::DoubleArrow) {
            let rhs = self.imp()?;
            formula = Formula::iff(formula, rhs);
        }
        Ok(formula)
    }

    fn imp(&mut self) -> Result<Formula> {
        let mut operands = vec![self.or()?];
        while self.eat(&TokenKind::Arrow) {
            operands.push(self.or()?);
        }
        // right-associative fold
        let mut formula = operands.pop().expect("at least one operand");
        while let Some(lhs) = operands.pop() {
            formula = Formula::implies(lhs, formula);
        }
        Ok(formula)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut formula = self.and()?;
        while self.eat(&TokenKind::Pipe) {
            let rhs = self.and()?;
            formula = Formula::or(formula, rhs);
        }
        Ok(formula)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut formula = self.unary()?;
        while self.eat(&TokenKind::Amp) {
            let rhs = self.unary()?;
            formula = Formula::and(formula, rhs);
        }
        Ok(formula)
    }

    fn unary(&mut self) -> Result<Formula> {
        let Some(token) = self.peek().cloned() else {
            return Err(self.end_error("unexpected end of input"));
        };
        self.pos += 1;
        match token.kind {
            TokenKind::Bang => Ok(Formula::not(self.unary()?)),
            TokenKind::Top => Ok(Formula::Top),
            TokenKind::Bottom => Ok(Formula::Bottom),
            TokenKind::Ident(name) => {
                debug_assert!(is_valid_atom_name(&name));
                Ok(Formula::Atom(Atom::new(name).expect("lexer yields valid names")))
            }
            TokenKind::LParen => {
                let inner = self.iff()?;
                if self.eat(&TokenKind::RParen) {
                    Ok(inner)
                } else {
                    match self.peek() {
                        Some(t) => Err(t.error("expected `)`")),
                        None => Err(self.end_error("expected `)`")),
                    }
                }
            }
            _ => Err(token.error("expected a formula")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(name: &str) -> Formula {
        Formula::atom(name).unwrap()
    }

    #[test]
    fn parses_grammar_examples() {
        assert_eq!(
            parse_formula("a & (b | c)").unwrap(),
            Formula::and(atom("a"), Formula::or(atom("b"), atom("c")))
        );
        assert_eq!(parse_formula("!b").unwrap(), Formula::not(atom("b")));
        assert_eq!(
            parse_formula("a -> c").unwrap(),
            Formula::implies(atom("a"), atom("c"))
        );
    }

    #[test]
    fn precedence_is_not_and_or_imp_iff() {
        assert_eq!(
            parse_formula("!a & b | c -> d <-> e").unwrap(),
            Formula::iff(
                Formula::implies(
                    Formula::or(Formula::and(Formula::not(atom("a")), atom("b")), atom("c")),
                    atom("d")
                ),
                atom("e")
            )
        );
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse_formula("a -> b -> c").unwrap(),
            Formula::implies(atom("a"), Formula::implies(atom("b"), atom("c")))
        );
    }

    #[test]
    fn constants_are_reserved_words() {
        assert_eq!(parse_formula("T").unwrap(), Formula::Top);
        assert_eq!(parse_formula("F").unwrap(), Formula::Bottom);
        assert_eq!(
            parse_formula("T & Fred").unwrap(),
            Formula::and(Formula::Top, atom("Fred"))
        );
    }

    #[test]
    fn empty_input_is_rejected() {
        assert_eq!(parse_formula(""), Err(Error::EmptyInput));
        assert_eq!(parse_formula("   "), Err(Error::EmptyInput));
    }

    #[test]
    fn errors_carry_line_and_column() {
        let err = parse_formula("a &\n& b").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                col: 1,
                msg: "expected a formula".to_string()
            }
        );
        let err = parse_formula("a @ b").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, col: 3, .. }));
    }

    #[test]
    fn trailing_input_is_rejected() {
        assert!(parse_formula("a b").is_err());
        assert!(parse_formula("(a))").is_err());
        assert!(parse_formula("(a").is_err());
    }
}
