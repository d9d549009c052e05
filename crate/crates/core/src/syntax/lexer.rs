use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// `vI` with a numeric suffix: a team variable.
    Var(usize),
    /// Any other identifier: a symbol of the signature, a real variable,
    /// or the keywords `forall` / `exists`.
    Ident(String),
    /// Integer or decimal literal, kept as text for exact conversion.
    Number(String),
    Bar,
    Tilde,
    Amp,
    Arrow,
    DArrow,
    Forall,
    Exists,
    LParen,
    RParen,
    Comma,
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    Plus,
    Minus,
    Star,
    Slash,
}

#[derive(Debug, Clone)]
pub struct SpannedTok {
    pub tok: Tok,
    pub pos: usize,
}

/// ASCII spellings are canonical; the unicode connectives are aliases.
pub fn lex(input: &str) -> Result<Vec<SpannedTok>, SyntaxError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        let mut push = |t: Tok, len: usize| {
            out.push(SpannedTok { tok: t, pos });
            len
        };
        i += match c {
            c if c.is_whitespace() => 1,
            '|' => push(Tok::Bar, 1),
            '∨' => push(Tok::Bar, 1),
            '~' | '¬' => push(Tok::Tilde, 1),
            '&' | '∧' => push(Tok::Amp, 1),
            '∀' => push(Tok::Forall, 1),
            '∃' => push(Tok::Exists, 1),
            '(' => push(Tok::LParen, 1),
            ')' => push(Tok::RParen, 1),
            ',' => push(Tok::Comma, 1),
            '=' => push(Tok::Eq, 1),
            '+' => push(Tok::Plus, 1),
            '*' | '·' => push(Tok::Star, 1),
            '/' => push(Tok::Slash, 1),
            '→' => push(Tok::Arrow, 1),
            '↔' => push(Tok::DArrow, 1),
            '≤' => push(Tok::Le, 1),
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    push(Tok::Arrow, 2)
                } else {
                    push(Tok::Minus, 1)
                }
            }
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    push(Tok::DArrow, 3)
                } else if chars.get(i + 1) == Some(&'=') {
                    push(Tok::Le, 2)
                } else {
                    push(Tok::Lt, 1)
                }
            }
            '>' => {
                if chars.get(i + 1) == Some(&'=') {
                    push(Tok::Ge, 2)
                } else {
                    push(Tok::Gt, 1)
                }
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if chars.get(j) == Some(&'.') {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                let text: String = chars[i..j].iter().collect();
                push(Tok::Number(text), j - i)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                let len = j - i;
                let tok = match text.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    _ => {
                        if let Some(idx) = text
                            .strip_prefix('v')
                            .filter(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()))
                        {
                            Tok::Var(idx.parse().expect("digits"))
                        } else {
                            Tok::Ident(text.clone())
                        }
                    }
                };
                push(tok, len)
            }
            other => {
                return Err(SyntaxError::Lex {
                    pos,
                    found: other.to_string(),
                })
            }
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_tokens() {
        let ts = lex("forall v2 (E(v0,v2) -> E(v2,v1))").unwrap();
        assert_eq!(ts[0].tok, Tok::Forall);
        assert_eq!(ts[1].tok, Tok::Var(2));
        assert_eq!(ts[3].tok, Tok::Ident("E".into()));
    }

    #[test]
    fn unicode_aliases() {
        let a = lex("~p & q | r").unwrap();
        let b = lex("¬p ∧ q ∨ r").unwrap();
        let toks = |v: Vec<SpannedTok>| v.into_iter().map(|t| t.tok).collect::<Vec<_>>();
        assert_eq!(toks(a), toks(b));
    }

    #[test]
    fn numbers_and_rationals() {
        let ts = lex("1/3 + 0.25").unwrap();
        assert_eq!(ts[0].tok, Tok::Number("1".into()));
        assert_eq!(ts[1].tok, Tok::Slash);
        assert_eq!(ts[4].tok, Tok::Number("0.25".into()));
    }

    #[test]
    fn var_vs_ident() {
        let ts = lex("v10 vx v").unwrap();
        assert_eq!(ts[0].tok, Tok::Var(10));
        assert_eq!(ts[1].tok, Tok::Ident("vx".into()));
        assert_eq!(ts[2].tok, Tok::Ident("v".into()));
    }

    #[test]
    fn lex_error_position() {
        match lex("v0 = ?").unwrap_err() {
            SyntaxError::Lex { pos, .. } => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
    }
}
