//! Small expression language for graphs.
//!
//! ```text
//! expr  := term ('+' term)*                 disjoint union
//! term  := atom ('[' expr ']')*             lexicographic product
//! atom  := family
//!        | 'co(' expr ')'                   complement
//!        | ('K' | 'I') '[' expr ']' '(' m (',' m)* ')'
//!                                           complete / independent expansion
//!        | '(' expr ')'
//!        | 'g6:' graph6-chars
//! family:= P<n> | C<n> | K<n> | K<n>,<n>,... | star<t>
//!        | paw | kite | bull | dart | claw | house | co-p5 | co-p2up3
//! ```
//!
//! Examples: `C5[K2]`, `K[P3](2,2,2)`, `co(I[C5](2,1,2,1,1))`, `P3+K3`.

use super::{
    complement, decode_graph6, disjoint_union, expansion, family_generator,
    lexicographic_product, ExpansionSpec, Graph, GraphError,
};

pub fn parse_graph_expr(input: &str) -> Result<Graph, GraphError> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: compact.as_bytes(), pos: 0, input };
    let g = p.expr()?;
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(g)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    input: &'a str,
}

const NAMED: &[&str] = &[
    "co-p2-u-p3", "co-p2up3", "co-p5", "house", "paw", "kite", "bull", "dart", "claw",
];

impl Parser<'_> {
    fn err(&self, reason: &str) -> GraphError {
        GraphError::Expr { input: self.input.to_string(), reason: format!("{reason} at offset {}", self.pos) }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), GraphError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn starts_with_ci(&self, word: &str) -> bool {
        let rest = &self.s[self.pos..];
        rest.len() >= word.len() && rest[..word.len()].eq_ignore_ascii_case(word.as_bytes())
    }

    fn expr(&mut self) -> Result<Graph, GraphError> {
        let mut g = self.term()?;
        while self.eat(b'+') {
            let h = self.term()?;
            g = disjoint_union(&g, &h)?;
        }
        Ok(g)
    }

    fn term(&mut self) -> Result<Graph, GraphError> {
        let mut g = self.atom()?;
        while self.eat(b'[') {
            let h = self.expr()?;
            self.expect(b']')?;
            g = lexicographic_product(&g, &h)?;
        }
        Ok(g)
    }

    fn number(&mut self) -> Result<usize, GraphError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn numbers(&mut self) -> Result<Vec<usize>, GraphError> {
        let mut out = vec![self.number()?];
        while self.eat(b',') {
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Graph, GraphError> {
        if self.eat(b'(') {
            let g = self.expr()?;
            self.expect(b')')?;
            return Ok(g);
        }
        if self.starts_with_ci("g6:") {
            self.pos += 3;
            let start = self.pos;
            while matches!(self.peek(), Some(c) if (63..=126).contains(&c) && c != b'[' && c != b']') {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
            return decode_graph6(text);
        }
        if self.starts_with_ci("co(") {
            self.pos += 3;
            let g = self.expr()?;
            self.expect(b')')?;
            return Ok(complement(&g));
        }
        for &name in NAMED {
            if self.starts_with_ci(name) {
                self.pos += name.len();
                return family_generator(name, &[]);
            }
        }
        if self.starts_with_ci("star") {
            self.pos += 4;
            let t = self.number()?;
            return family_generator("star", &[t]);
        }
        match self.peek().map(|c| c.to_ascii_uppercase()) {
            Some(kind @ (b'K' | b'I')) if self.s.get(self.pos + 1) == Some(&b'[') => {
                self.pos += 2;
                let base = self.expr()?;
                self.expect(b']')?;
                self.expect(b'(')?;
                let sizes = self.numbers()?;
                self.expect(b')')?;
                let spec = if kind == b'K' {
                    ExpansionSpec::complete(&base, &sizes)
                } else {
                    ExpansionSpec::independent(&base, &sizes)
                };
                expansion(&spec)
            }
            Some(c @ (b'P' | b'C' | b'K')) => {
                self.pos += 1;
                let params = self.numbers()?;
                family_generator(&(c as char).to_string(), &params)
            }
            _ => Err(self.err("expected a graph")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::is_isomorphic;
    use super::*;

    #[test]
    fn families_and_products() {
        assert_eq!(parse_graph_expr("P4").unwrap(), family_generator("P", &[4]).unwrap());
        let g = parse_graph_expr("C5[K2]").unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 25));
        let k23 = parse_graph_expr("K2,3").unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert_eq!(parse_graph_expr("star4").unwrap().n(), 5);
        assert_eq!(parse_graph_expr("House").unwrap(), family_generator("co-p5", &[]).unwrap());
    }

    #[test]
    fn expansions_complements_unions() {
        let a = parse_graph_expr("K[P3](2,2,2)").unwrap();
        let b = parse_graph_expr("P3[K2]").unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        let i = parse_graph_expr("I[C5](2,2,2,2,2)").unwrap();
        assert_eq!(i.n(), 10);
        let u = parse_graph_expr("P3 + K3").unwrap();
        assert_eq!((u.n(), u.edge_count()), (6, 5));
        let c = parse_graph_expr("co(K4)").unwrap();
        assert_eq!(c.edge_count(), 0);
        assert_eq!(parse_graph_expr("g6:Bw").unwrap().edge_count(), 3);
        let nested = parse_graph_expr("(P2+K1)[P2]").unwrap();
        assert_eq!(nested.n(), 6);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "Q3", "P", "C2", "K[P3](2,2)", "P3[", "P3)", "co(P3"] {
            assert!(parse_graph_expr(bad).is_err(), "{bad} should fail");
        }
    }
}
