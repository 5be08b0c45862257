use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    LowerWord(String),
    UpperWord(String),
    DollarWord(String),
    SingleQuoted(String),
    Int(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    Bang,
    Question,
    Tilde,
    Amp,
    Pipe,
    Implies,
    RevImplies,
    Iff,
    Xor,
    Nor,
    Nand,
    Equals,
    NotEquals,
    /// `-->` or `->`
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::LowerWord(w) | Tok::UpperWord(w) | Tok::DollarWord(w) | Tok::Int(w) => return f.write_str(w),
            Tok::SingleQuoted(w) => return write!(f, "'{w}'"),
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::Bang => "!",
            Tok::Question => "?",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Implies => "=>",
            Tok::RevImplies => "<=",
            Tok::Iff => "<=>",
            Tok::Xor => "<~>",
            Tok::Nor => "~|",
            Tok::Nand => "~&",
            Tok::Equals => "=",
            Tok::NotEquals => "!=",
            Tok::Arrow => "-->",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub pos: Pos,
    pub found: String,
    pub message: String,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn word(&mut self, first: char) -> String {
        let mut s = String::from(first);
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor { chars: src.chars().peekable(), pos: Pos { line: 1, col: 1 } };
    let mut out = Vec::new();
    loop {
        let start = cur.pos;
        let Some(c) = cur.bump() else {
            out.push(Token { tok: Tok::Eof, pos: start });
            return Ok(out);
        };
        let err = |found: &str, message: &str| LexError {
            pos: start,
            found: found.to_string(),
            message: message.to_string(),
        };
        let tok = match c {
            c if c.is_whitespace() => continue,
            '%' => {
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                }
                continue;
            }
            '/' if cur.eat('*') => {
                let mut prev = ' ';
                loop {
                    match cur.bump() {
                        Some('/') if prev == '*' => break,
                        Some(c) => prev = c,
                        None => return Err(err("/*", "unterminated block comment")),
                    }
                }
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            ':' => Tok::Colon,
            '?' => Tok::Question,
            '&' => Tok::Amp,
            '|' => Tok::Pipe,
            '!' => {
                if cur.eat('=') {
                    Tok::NotEquals
                } else {
                    Tok::Bang
                }
            }
            '~' => {
                if cur.eat('|') {
                    Tok::Nor
                } else if cur.eat('&') {
                    Tok::Nand
                } else {
                    Tok::Tilde
                }
            }
            '=' => {
                if cur.eat('>') {
                    Tok::Implies
                } else {
                    Tok::Equals
                }
            }
            '<' => {
                if cur.eat('=') {
                    if cur.eat('>') {
                        Tok::Iff
                    } else {
                        Tok::RevImplies
                    }
                } else if cur.eat('~') {
                    if cur.eat('>') {
                        Tok::Xor
                    } else {
                        return Err(err("<~", "expected `<~>`"));
                    }
                } else {
                    return Err(err("<", "unexpected character"));
                }
            }
            '-' => {
                cur.eat('-');
                if cur.eat('>') {
                    Tok::Arrow
                } else {
                    return Err(err("-", "expected a sequent arrow `-->`"));
                }
            }
            '\'' => {
                let mut s = String::new();
                loop {
                    match cur.bump() {
                        Some('\\') => match cur.bump() {
                            Some(c) => s.push(c),
                            None => return Err(err("'", "unterminated quoted name")),
                        },
                        Some('\'') => break,
                        Some(c) => s.push(c),
                        None => return Err(err("'", "unterminated quoted name")),
                    }
                }
                Tok::SingleQuoted(s)
            }
            '$' => {
                let w = cur.word('$');
                if w.len() == 1 {
                    return Err(err("$", "expected a $-word"));
                }
                Tok::DollarWord(w)
            }
            c if c.is_ascii_digit() => {
                let mut s = String::from(c);
                while let Some(d) = cur.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    cur.bump();
                }
                Tok::Int(s)
            }
            c if c.is_ascii_lowercase() => Tok::LowerWord(cur.word(c)),
            c if c.is_ascii_uppercase() || c == '_' => Tok::UpperWord(cur.word(c)),
            other => return Err(err(&other.to_string(), "unexpected character")),
        };
        out.push(Token { tok, pos: start });
    }
}
