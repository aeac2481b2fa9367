//! Permutations of a fixed degree.
//!
//! Products compose left to right: `(a * b)(x) = b(a(x))`, so the action of a
//! group on points (and on everything built from points) is a right action.
//! Cycle notation is 1-based in text, 0-based internally.

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::Invalid("images are not a bijection".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inv(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    pub fn order(&self) -> u64 {
        let mut o = 1u64;
        let mut seen = vec![false; self.degree()];
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut x = s as u32;
            loop {
                seen[x as usize] = true;
                len += 1;
                x = self.images[x as usize];
                if x as usize == s {
                    break;
                }
            }
            o = num_integer::lcm(o, len);
        }
        o
    }

    /// Parses juxtaposed cycles like `(1,2)(3,4)`; points are 1-based.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let s = text.trim();
        if s.is_empty() || s == "()" {
            return Ok(Perm { images });
        }
        let mut rest = s;
        while !rest.is_empty() {
            let Some(open) = rest.find('(') else {
                return Err(Error::Invalid(format!("expected '(' in cycle string: {rest}")));
            };
            if !rest[..open].trim().is_empty() {
                return Err(Error::Invalid(format!("stray text before cycle: {rest}")));
            }
            let Some(close) = rest.find(')') else {
                return Err(Error::Invalid(format!("unclosed cycle: {rest}")));
            };
            let body = &rest[open + 1..close];
            let mut points = Vec::new();
            for part in body.split(',') {
                let p: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad point '{part}' in cycle")))?;
                if p == 0 || p > degree {
                    return Err(Error::Invalid(format!(
                        "point {p} out of range 1..={degree} in cycle"
                    )));
                }
                if points.contains(&(p as u32 - 1)) {
                    return Err(Error::Invalid(format!("duplicate point {p} in a cycle")));
                }
                points.push(p as u32 - 1);
            }
            if points.len() > 1 {
                for w in 0..points.len() {
                    let from = points[w];
                    let to = points[(w + 1) % points.len()];
                    if images[from as usize] != from {
                        return Err(Error::Invalid(format!(
                            "point {} appears in two cycles",
                            from + 1
                        )));
                    }
                    images[from as usize] = to;
                }
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_images(images)
    }

    /// Cycle notation, 1-based, identity printed as `()`.
    pub fn cycle_string(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for s in 0..self.degree() {
            if seen[s] || self.images[s] as usize == s {
                seen[s] = true;
                continue;
            }
            let mut cyc = vec![s as u32];
            seen[s] = true;
            let mut x = self.images[s];
            while x as usize != s {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.images[x as usize];
            }
            out.push('(');
            out.push_str(&cyc.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}
