use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Ge,
    Eq,
    Comma,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    Question,
    Adversary,
    Current,
    Semi,
    Plus,
    Star,
    Caret,
    Minus,
    Slash,
    Word(String),
    Str(String),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Str(s) => format!("{s:?}"),
            Tok::Eof => "end of input".to_string(),
            other => {
                let s = match other {
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::Lt => "<",
                    Tok::Gt => ">",
                    Tok::Ge => ">=",
                    Tok::Eq => "=",
                    Tok::Comma => ",",
                    Tok::Tilde => "~",
                    Tok::Amp => "&",
                    Tok::Pipe => "|",
                    Tok::Arrow => "->",
                    Tok::DoubleArrow => "<->",
                    Tok::Question => "?",
                    Tok::Adversary => "??",
                    Tok::Current => "!!",
                    Tok::Semi => ";",
                    Tok::Plus => "+",
                    Tok::Star => "*",
                    Tok::Caret => "^",
                    Tok::Minus => "-",
                    Tok::Slash => "/",
                    _ => unreachable!(),
                };
                format!("`{s}`")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let at = |k: usize| chars.get(i + k).copied();
        if c.is_whitespace() {
            step(&chars[i..i + 1], &mut line, &mut column);
            i += 1;
            continue;
        }
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            ',' => (Tok::Comma, 1),
            '~' => (Tok::Tilde, 1),
            '&' => (Tok::Amp, 1),
            '|' => (Tok::Pipe, 1),
            ';' => (Tok::Semi, 1),
            '+' => (Tok::Plus, 1),
            '*' => (Tok::Star, 1),
            '^' => (Tok::Caret, 1),
            '/' => (Tok::Slash, 1),
            '=' => (Tok::Eq, 1),
            '<' if at(1) == Some('-') && at(2) == Some('>') => (Tok::DoubleArrow, 3),
            '<' => (Tok::Lt, 1),
            '>' if at(1) == Some('=') => (Tok::Ge, 2),
            '>' => (Tok::Gt, 1),
            '-' if at(1) == Some('>') => (Tok::Arrow, 2),
            '-' => (Tok::Minus, 1),
            '?' if at(1) == Some('?') => (Tok::Adversary, 2),
            '?' => (Tok::Question, 1),
            '!' if at(1) == Some('!') => (Tok::Current, 2),
            '"' => {
                let mut s = String::new();
                let mut k = 1;
                loop {
                    match at(k) {
                        None => {
                            return Err(ParseError::syntax(start_line, start_col, "unterminated string"))
                        }
                        Some('"') => break,
                        Some('\\') => match at(k + 1) {
                            Some(e @ ('"' | '\\')) => {
                                s.push(e);
                                k += 2;
                            }
                            _ => {
                                return Err(ParseError::syntax(start_line, start_col, "bad escape in string"))
                            }
                        },
                        Some(ch) => {
                            s.push(ch);
                            k += 1;
                        }
                    }
                }
                (Tok::Str(s), k + 1)
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut k = 0;
                while at(k).is_some_and(|ch| ch.is_ascii_alphanumeric() || ch == '_') {
                    k += 1;
                }
                (Tok::Word(chars[i..i + k].iter().collect()), k)
            }
            other => {
                return Err(ParseError::syntax(
                    start_line,
                    start_col,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
        step(&chars[i..i + len], &mut line, &mut column);
        i += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

fn step(consumed: &[char], line: &mut usize, column: &mut usize) {
    for &ch in consumed {
        if ch == '\n' {
            *line += 1;
            *column = 1;
        } else {
            *column += 1;
        }
    }
}
