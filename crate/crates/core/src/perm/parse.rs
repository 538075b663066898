use super::{PermError, Permutation};

/// Parses one-line (`"2,3,1"`) or cycle (`"(1,3,8)(2,5)"`) notation.
///
/// Symbols missing from cycle notation are fixed points. Whitespace between
/// tokens is ignored.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation, PermError> {
    if degree == 0 {
        return Err(PermError::ZeroDegree);
    }
    let mut lexer = Lexer::new(text);
    lexer.skip_ws();
    if lexer.peek() == Some(b'(') {
        let cycles = parse_cycles(&mut lexer, degree)?;
        Ok(Permutation::from_cycles(degree, &cycles).expect("cycles validated during parsing"))
    } else {
        let images = parse_one_line(&mut lexer, Some(degree))?;
        Ok(Permutation::from_images(&images).expect("images validated during parsing"))
    }
}

/// Like [`parse_permutation`], inferring the degree: the entry count for
/// one-line notation, the largest symbol for cycle notation.
pub fn parse_permutation_inferred(text: &str) -> Result<Permutation, PermError> {
    let mut lexer = Lexer::new(text);
    lexer.skip_ws();
    if lexer.peek() == Some(b'(') {
        let cycles = parse_cycles(&mut lexer, usize::MAX)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
        Ok(Permutation::from_cycles(degree, &cycles).expect("cycles validated during parsing"))
    } else {
        let images = parse_one_line(&mut lexer, None)?;
        Ok(Permutation::from_images(&images).expect("images validated during parsing"))
    }
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: impl Into<String>) -> PermError {
        PermError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn number(&mut self) -> Result<(usize, usize), PermError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a positive integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value = digits.parse::<usize>().map_err(|_| PermError::Parse {
            pos: start,
            msg: format!("integer {} is too large", digits),
        })?;
        Ok((value, start))
    }
}

fn parse_cycles(lexer: &mut Lexer<'_>, degree: usize) -> Result<Vec<Vec<usize>>, PermError> {
    let mut cycles = Vec::new();
    let mut seen = std::collections::HashSet::new();
    loop {
        lexer.skip_ws();
        match lexer.peek() {
            None => break,
            Some(b'(') => lexer.pos += 1,
            Some(_) => return Err(lexer.error("expected '(' or end of input")),
        }
        let mut cycle = Vec::new();
        lexer.skip_ws();
        if lexer.peek() == Some(b')') {
            lexer.pos += 1;
            continue;
        }
        loop {
            let (x, at) = lexer.number()?;
            if x == 0 || x > degree {
                return Err(PermError::Parse {
                    pos: at,
                    msg: format!("symbol {} outside 1..{}", x, degree),
                });
            }
            if !seen.insert(x) {
                return Err(PermError::Parse {
                    pos: at,
                    msg: format!("symbol {} repeated", x),
                });
            }
            cycle.push(x);
            lexer.skip_ws();
            match lexer.peek() {
                Some(b',') => lexer.pos += 1,
                Some(b')') => {
                    lexer.pos += 1;
                    break;
                }
                _ => return Err(lexer.error("expected ',' or ')'")),
            }
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

fn parse_one_line(lexer: &mut Lexer<'_>, degree: Option<usize>) -> Result<Vec<usize>, PermError> {
    let mut entries = Vec::new();
    loop {
        entries.push(lexer.number()?);
        lexer.skip_ws();
        match lexer.peek() {
            None => break,
            Some(b',') => lexer.pos += 1,
            Some(_) => return Err(lexer.error("expected ',' or end of input")),
        }
    }
    let n = degree.unwrap_or(entries.len());
    if entries.len() != n {
        return Err(PermError::Parse {
            pos: lexer.pos,
            msg: format!("expected {} entries, found {}", n, entries.len()),
        });
    }
    let mut seen = vec![false; n];
    for &(x, at) in &entries {
        if x == 0 || x > n {
            return Err(PermError::Parse {
                pos: at,
                msg: format!("symbol {} outside 1..{}", x, n),
            });
        }
        if std::mem::replace(&mut seen[x - 1], true) {
            return Err(PermError::Parse {
                pos: at,
                msg: format!("symbol {} repeated", x),
            });
        }
    }
    Ok(entries.into_iter().map(|(x, _)| x).collect())
}
