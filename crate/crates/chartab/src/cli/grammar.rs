//! The group-spec mini-grammar.
//!
//! spec := atom | spec "x" atom
//! atom := "PSL(2," int ")" | "SL(2," int ")" | "A(" int ")" | "S(" int ")"
//!       | "C(" int ")" | "D(" int ")" | "Frob(" int {"," int} ")"
//!       | "Q8" | "SD16" | "perm(" path ")"
//!
//! Keywords are case-insensitive and whitespace between tokens is ignored.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpecAst {
    Psl2(u64),
    Sl2(u64),
    Alternating(u64),
    Symmetric(u64),
    Cyclic(u64),
    Dihedral(u64),
    Frobenius(Vec<u64>),
    Q8,
    Sd16,
    PermFile(String),
    Product(Box<GroupSpecAst>, Box<GroupSpecAst>),
}

pub fn parse_group_spec(input: &str) -> Result<GroupSpecAst> {
    let mut parser = Parser {
        input: input.as_bytes(),
        pos: 0,
    };
    let ast = parser.parse_spec()?;
    parser.skip_ws();
    if parser.pos != parser.input.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(ast)
}

pub fn render_group_spec(ast: &GroupSpecAst) -> String {
    match ast {
        GroupSpecAst::Psl2(q) => format!("PSL(2,{q})"),
        GroupSpecAst::Sl2(q) => format!("SL(2,{q})"),
        GroupSpecAst::Alternating(n) => format!("A({n})"),
        GroupSpecAst::Symmetric(n) => format!("S({n})"),
        GroupSpecAst::Cyclic(n) => format!("C({n})"),
        GroupSpecAst::Dihedral(n) => format!("D({n})"),
        GroupSpecAst::Frobenius(ms) => format!(
            "Frob({})",
            ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
        ),
        GroupSpecAst::Q8 => "Q8".into(),
        GroupSpecAst::Sd16 => "SD16".into(),
        GroupSpecAst::PermFile(path) => format!("perm({path})"),
        GroupSpecAst::Product(a, b) => {
            format!("{} x {}", render_group_spec(a), render_group_spec(b))
        }
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Case-insensitive match of a literal token, consuming it on success.
    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        let bytes = token.as_bytes();
        if self.pos + bytes.len() > self.input.len() {
            return false;
        }
        let slice = &self.input[self.pos..self.pos + bytes.len()];
        if slice.eq_ignore_ascii_case(bytes) {
            self.pos += bytes.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {token:?}")))
        }
    }

    fn parse_int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.input[start..self.pos]).expect("ascii digits");
        digits
            .parse::<u64>()
            .map_err(|_| self.error("integer out of range"))
    }

    fn parse_spec(&mut self) -> Result<GroupSpecAst> {
        let mut node = self.parse_atom()?;
        loop {
            self.skip_ws();
            if self.eat("x") {
                let rhs = self.parse_atom()?;
                node = GroupSpecAst::Product(Box::new(node), Box::new(rhs));
            } else {
                return Ok(node);
            }
        }
    }

    fn parse_atom(&mut self) -> Result<GroupSpecAst> {
        self.skip_ws();
        if self.eat("PSL") {
            self.expect("(")?;
            self.expect("2")?;
            self.expect(",")?;
            let q = self.parse_int()?;
            self.expect(")")?;
            return Ok(GroupSpecAst::Psl2(q));
        }
        if self.eat("perm") {
            self.expect("(")?;
            let start = self.pos;
            while self.pos < self.input.len() && self.input[self.pos] != b')' {
                self.pos += 1;
            }
            if self.pos == self.input.len() {
                return Err(self.error("unterminated path"));
            }
            let raw = &self.input[start..self.pos];
            self.pos += 1; // the closing parenthesis
            let path = std::str::from_utf8(raw)
                .map_err(|_| self.error("path is not valid UTF-8"))?
                .trim()
                .to_string();
            if path.is_empty() {
                return Err(self.error("empty path"));
            }
            return Ok(GroupSpecAst::PermFile(path));
        }
        if self.eat("SL") {
            self.expect("(")?;
            self.expect("2")?;
            self.expect(",")?;
            let q = self.parse_int()?;
            self.expect(")")?;
            return Ok(GroupSpecAst::Sl2(q));
        }
        if self.eat("SD16") {
            return Ok(GroupSpecAst::Sd16);
        }
        if self.eat("Frob") {
            self.expect("(")?;
            let mut invariants = vec![self.parse_int()?];
            loop {
                self.skip_ws();
                if self.eat(",") {
                    invariants.push(self.parse_int()?);
                } else {
                    break;
                }
            }
            self.expect(")")?;
            return Ok(GroupSpecAst::Frobenius(invariants));
        }
        if self.eat("Q8") {
            return Ok(GroupSpecAst::Q8);
        }
        for (token, build) in [
            ("A", GroupSpecAst::Alternating as fn(u64) -> GroupSpecAst),
            ("S", GroupSpecAst::Symmetric),
            ("C", GroupSpecAst::Cyclic),
            ("D", GroupSpecAst::Dihedral),
        ] {
            if self.eat(token) {
                self.expect("(")?;
                let n = self.parse_int()?;
                self.expect(")")?;
                return Ok(build(n));
            }
        }
        Err(self.error("expected a group atom"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn atoms() {
        assert_eq!(parse_group_spec("PSL(2,8)").unwrap(), GroupSpecAst::Psl2(8));
        assert_eq!(parse_group_spec("SL(2,3)").unwrap(), GroupSpecAst::Sl2(3));
        assert_eq!(parse_group_spec("A(7)").unwrap(), GroupSpecAst::Alternating(7));
        assert_eq!(parse_group_spec("Q8").unwrap(), GroupSpecAst::Q8);
        assert_eq!(parse_group_spec("sd16").unwrap(), GroupSpecAst::Sd16);
        assert_eq!(
            parse_group_spec("Frob(3,3)").unwrap(),
            GroupSpecAst::Frobenius(vec![3, 3])
        );
        assert_eq!(
            parse_group_spec("perm(data/example.perm)").unwrap(),
            GroupSpecAst::PermFile("data/example.perm".into())
        );
    }

    #[test]
    fn products_are_left_associative() {
        let ast = parse_group_spec("PSL(2,4) x C(2)").unwrap();
        assert_eq!(
            ast,
            GroupSpecAst::Product(
                Box::new(GroupSpecAst::Psl2(4)),
                Box::new(GroupSpecAst::Cyclic(2))
            )
        );
        let ast = parse_group_spec("C(2)xC(3)xC(5)").unwrap();
        assert_eq!(render_group_spec(&ast), "C(2) x C(3) x C(5)");
        match ast {
            GroupSpecAst::Product(left, _) => {
                assert!(matches!(*left, GroupSpecAst::Product(_, _)));
            }
            _ => panic!("expected a product"),
        }
    }

    #[test]
    fn case_and_whitespace_insensitivity() {
        assert_eq!(
            parse_group_spec(" psl ( 2 , 16 ) ").unwrap(),
            GroupSpecAst::Psl2(16)
        );
        assert_eq!(
            parse_group_spec("frob(5 , 5)").unwrap(),
            GroupSpecAst::Frobenius(vec![5, 5])
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for bad in ["", "PSL(3,4)", "A(", "Q9", "C(2) y C(3)", "perm(", "A(x)"] {
            match parse_group_spec(bad) {
                Err(Error::Syntax { .. }) => {}
                other => panic!("expected syntax error for {bad:?}, got {other:?}"),
            }
        }
    }

    fn atom_strategy() -> impl Strategy<Value = GroupSpecAst> {
        prop_oneof![
            (2u64..64).prop_map(GroupSpecAst::Psl2),
            (2u64..64).prop_map(GroupSpecAst::Sl2),
            (1u64..12).prop_map(GroupSpecAst::Alternating),
            (1u64..12).prop_map(GroupSpecAst::Symmetric),
            (1u64..64).prop_map(GroupSpecAst::Cyclic),
            (3u64..64).prop_map(GroupSpecAst::Dihedral),
            prop::collection::vec(3u64..20, 1..4).prop_map(GroupSpecAst::Frobenius),
            Just(GroupSpecAst::Q8),
            Just(GroupSpecAst::Sd16),
            "[a-zA-Z0-9_./-]{1,20}".prop_map(GroupSpecAst::PermFile),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn render_parse_round_trip(atoms in prop::collection::vec(atom_strategy(), 1..5)) {
            // products associate to the left, matching the grammar
            let mut ast = atoms[0].clone();
            for atom in &atoms[1..] {
                ast = GroupSpecAst::Product(Box::new(ast), Box::new(atom.clone()));
            }
            let rendered = render_group_spec(&ast);
            let reparsed = parse_group_spec(&rendered).unwrap();
            prop_assert_eq!(&reparsed, &ast);
            // rendering is a fixed point
            prop_assert_eq!(render_group_spec(&reparsed), rendered);
        }

        #[test]
        fn parser_never_panics(input in "\\PC*") {
            let _ = parse_group_spec(&input);
        }
    }
}
