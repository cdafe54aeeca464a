//! The named spaces used throughout: simplices, horns, the circle, diamonds,
//! the (punctured) torus, the Mermin square spaces and the spaces of Fine's
//! theorem.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::glue::glue;
use super::presented::{PresentedSSet, SimplexId, SimplexRef, DEFAULT_MAX_DIM};
use super::SsetError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Delta(usize),
    BoundaryDelta(usize),
    Horn(usize, usize),
    Circle,
    /// Two triangles glued along `d_a` of the first and `d_b` of the second.
    Diamond(usize, usize),
    PuncturedTorus,
    Torus,
    GluedTriangle,
    MerminSquareStateDep,
    MerminSquareStateIndep,
    SquareQ,
    SpaceH,
    SpaceA,
    /// Two `d`-simplices sharing an `n`-dimensional face.
    Z(usize, usize),
}

impl FromStr for Builtin {
    type Err = SsetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SsetError::UnknownBuiltin(s.to_string());
        let t = s.trim();
        let (name, args) = match t.split_once('(') {
            Some((n, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(err)?;
                let args = inner
                    .split(',')
                    .map(|a| a.trim().parse::<usize>().map_err(|_| err()))
                    .collect::<Result<Vec<_>, _>>()?;
                (n.trim(), args)
            }
            None => (t, vec![]),
        };
        let b = match (name, args.as_slice()) {
            ("delta", [n]) => Builtin::Delta(*n),
            ("boundary_delta", [n]) if *n >= 1 => Builtin::BoundaryDelta(*n),
            ("horn", [n, k]) => Builtin::Horn(*n, *k),
            ("circle", []) => Builtin::Circle,
            ("diamond", []) => Builtin::Diamond(1, 1),
            ("diamond", [a, b]) if *a <= 2 && *b <= 2 => Builtin::Diamond(*a, *b),
            ("punctured_torus", []) => Builtin::PuncturedTorus,
            ("torus", []) => Builtin::Torus,
            ("glued_triangle", []) => Builtin::GluedTriangle,
            ("mermin_square_state_dep", []) => Builtin::MerminSquareStateDep,
            ("mermin_square_state_indep", []) => Builtin::MerminSquareStateIndep,
            ("square_Q", []) => Builtin::SquareQ,
            ("space_H", []) => Builtin::SpaceH,
            ("space_A", []) => Builtin::SpaceA,
            ("Z", [d, n]) if n < d => Builtin::Z(*d, *n),
            _ => return Err(err()),
        };
        Ok(b)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Delta(n) => write!(f, "delta({n})"),
            Builtin::BoundaryDelta(n) => write!(f, "boundary_delta({n})"),
            Builtin::Horn(n, k) => write!(f, "horn({n},{k})"),
            Builtin::Circle => write!(f, "circle"),
            Builtin::Diamond(a, b) => write!(f, "diamond({a},{b})"),
            Builtin::PuncturedTorus => write!(f, "punctured_torus"),
            Builtin::Torus => write!(f, "torus"),
            Builtin::GluedTriangle => write!(f, "glued_triangle"),
            Builtin::MerminSquareStateDep => write!(f, "mermin_square_state_dep"),
            Builtin::MerminSquareStateIndep => write!(f, "mermin_square_state_indep"),
            Builtin::SquareQ => write!(f, "square_Q"),
            Builtin::SpaceH => write!(f, "space_H"),
            Builtin::SpaceA => write!(f, "space_A"),
            Builtin::Z(d, n) => write!(f, "Z({d},{n})"),
        }
    }
}

/// Builds a builtin from its name, e.g. `"horn(2,1)"` or `"punctured_torus"`.
pub fn builtin(name: &str) -> Result<PresentedSSet, SsetError> {
    name.parse::<Builtin>()?.build()
}

const FINE_VERTICES: [&str; 5] = ["0", "0'", "1", "2", "3"];

fn fine_relabel(x: &mut PresentedSSet) {
    let names = [
        ("01", "x0"),
        ("0'1", "x1"),
        ("12", "y0"),
        ("13", "y1"),
        ("02", "x0+y0"),
        ("03", "x0+y1"),
        ("0'2", "x1+y0"),
        ("0'3", "x1+y1"),
    ];
    for (old, new) in names {
        if let Some(s) = x.find_label(old) {
            x.set_label(s, new);
        }
    }
}

fn ids(x: &PresentedSSet, labels: &[&str]) -> Vec<SimplexId> {
    labels.iter().map(|l| x.find_label(l).expect("builtin label")).collect()
}

const XOR_EDGES: [&str; 4] = ["x0+y0", "x0+y1", "x1+y0", "x1+y1"];

impl Builtin {
    pub fn build(&self) -> Result<PresentedSSet, SsetError> {
        match *self {
            Builtin::Delta(n) => simplex_complex(n, |_| true),
            Builtin::BoundaryDelta(n) => simplex_complex(n, |i| i.is_some()),
            Builtin::Horn(n, k) => {
                if k > n || n == 0 {
                    return Err(SsetError::Malformed(format!("horn({n},{k}) needs k <= n and n >= 1")));
                }
                simplex_complex(n, move |i| i.is_some_and(|i| i != k))
            }
            Builtin::Circle => {
                let d1 = simplex_complex(1, |_| true)?;
                let mut c = glue(&d1, &[(SimplexRef::nondeg(0, 0), SimplexRef::nondeg(0, 1))])?;
                c.set_label(SimplexId::new(1, 0), "e");
                c.designate("loop", vec![SimplexId::new(1, 0)]);
                Ok(c)
            }
            Builtin::Diamond(a, b) => diamond(a, b),
            Builtin::PuncturedTorus => {
                let mut x = from_triangles(&PUNCTURED_TORUS)?;
                x.designate("boundary", ids(&x, &XOR_EDGES));
                Ok(x)
            }
            Builtin::Torus => {
                let mut tris = PUNCTURED_TORUS.to_vec();
                tris.push(("s_plus", ["x1+y1", "c", "x0+y0"]));
                tris.push(("s_minus", ["x0+y1", "c", "x1+y0"]));
                let mut x = from_triangles(&tris)?;
                x.designate("punctured_torus", ids(&x, &["s_y0x0", "s_y0x1", "s_x0y1", "s_x1y1"]));
                x.designate("diamond", ids(&x, &["s_plus", "s_minus"]));
                x.designate("boundary", ids(&x, &XOR_EDGES));
                Ok(x)
            }
            Builtin::GluedTriangle => {
                let mut t = simplex_complex(2, |_| true)?;
                let s = t.find_label("012").unwrap();
                t.set_label(s, "s");
                let x = t.find_label("01").unwrap();
                t.set_label(x, "x");
                let pair = (t.raw_face(s, 0).clone(), t.raw_face(s, 1).clone());
                let mut g = glue(&t, &[pair])?;
                let e = g.raw_face(SimplexId::new(2, 0), 0).base;
                g.set_label(e, "e");
                Ok(g)
            }
            Builtin::MerminSquareStateDep => {
                let mut x = from_triangles(&MERMIN_STATE_DEP)?;
                x.designate("boundary", ids(&x, &["XX", "YY", "ZZ"]));
                Ok(x)
            }
            Builtin::MerminSquareStateIndep => {
                let mut tris = MERMIN_STATE_DEP.to_vec();
                tris.push(("c3a", ["ZZ", "-YY", "XX"]));
                tris.push(("c3b", ["YY", "-YY", "-II"]));
                let mut x = from_triangles(&tris)?;
                x.designate("loop", ids(&x, &["-II"]));
                Ok(x)
            }
            Builtin::SquareQ => {
                let facets = [vec![0, 2, 3], vec![0, 2, 4], vec![1, 2, 3], vec![1, 2, 4]];
                let mut x = PresentedSSet::from_ordered_complex(&FINE_VERTICES, &facets, DEFAULT_MAX_DIM)?;
                fine_relabel(&mut x);
                x.designate("boundary", ids(&x, &XOR_EDGES));
                Ok(x)
            }
            Builtin::SpaceA => {
                let facets = [vec![2, 3, 4], vec![0, 3, 4], vec![1, 3, 4]];
                let mut x = PresentedSSet::from_ordered_complex(&FINE_VERTICES, &facets, DEFAULT_MAX_DIM)?;
                fine_relabel(&mut x);
                x.designate("boundary", ids(&x, &["y0", "y1", "x0+y0", "x0+y1", "x1+y0", "x1+y1"]));
                Ok(x)
            }
            Builtin::SpaceH => {
                let facets = [
                    vec![2, 3, 4],
                    vec![0, 3, 4],
                    vec![0, 2, 4],
                    vec![0, 2, 3],
                    vec![1, 3, 4],
                    vec![1, 2, 4],
                    vec![1, 2, 3],
                ];
                let mut x = PresentedSSet::from_ordered_complex(&FINE_VERTICES, &facets, DEFAULT_MAX_DIM)?;
                fine_relabel(&mut x);
                x.designate("Q", ids(&x, &["012", "013", "0'12", "0'13"]));
                x.designate("A", ids(&x, &["123", "023", "0'23"]));
                x.designate("boundary", ids(&x, &XOR_EDGES));
                Ok(x)
            }
            Builtin::Z(d, n) => z_space(d, n),
        }
    }
}

/// `Δ^n` restricted to the full simplex (`None`) and the codimension-one
/// faces `Some(i)` accepted by `keep`.
fn simplex_complex(n: usize, keep: impl Fn(Option<usize>) -> bool) -> Result<PresentedSSet, SsetError> {
    let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let mut facets = vec![];
    if keep(None) {
        facets.push((0..=n).collect::<Vec<_>>());
    } else {
        for i in 0..=n {
            if keep(Some(i)) {
                facets.push((0..=n).filter(|&v| v != i).collect());
            }
        }
    }
    PresentedSSet::from_ordered_complex(&refs, &facets, DEFAULT_MAX_DIM.max(n))
}

fn diamond(a: usize, b: usize) -> Result<PresentedSSet, SsetError> {
    let t1 = ("s_x0y0", ["y0", "x0+y0", "x0"]);
    let t2 = ("s_x1y1", ["y1", "x1+y1", "x1"]);
    let mut x = from_triangles(&[t1, t2])?;
    let s1 = x.find_label("s_x0y0").unwrap();
    let s2 = x.find_label("s_x1y1").unwrap();
    let pair = (x.raw_face(s1, a).clone(), x.raw_face(s2, b).clone());
    let shared_labels = [t1.1[a], t2.1[b]];
    x = glue(&x, &[pair])?;
    let shared = x.raw_face(x.find_label("s_x0y0").unwrap(), a).base;
    x.set_label(shared, "c");
    let boundary: Vec<SimplexId> = ["y0", "x0+y0", "x0", "y1", "x1+y1", "x1"]
        .iter()
        .filter(|l| !shared_labels.contains(l))
        .map(|l| x.find_label(l).unwrap())
        .collect();
    x.designate("boundary", boundary);
    Ok(x)
}

fn z_space(d: usize, n: usize) -> Result<PresentedSSet, SsetError> {
    if n >= d {
        return Err(SsetError::Malformed(format!("Z({d},{n}) needs n < d")));
    }
    // the shared face is spanned by the first n+1 of 0, 2, 3, .., d, 1
    let mut pool: Vec<usize> = std::iter::once(0).chain(2..=d).chain(std::iter::once(1)).collect();
    pool.truncate(n + 1);
    let mut names = vec![];
    let mut first = vec![];
    let mut second = vec![];
    for k in 0..=d {
        names.push(k.to_string());
        first.push(names.len() - 1);
        if pool.contains(&k) {
            second.push(names.len() - 1);
        } else {
            names.push(format!("{k}'"));
            second.push(names.len() - 1);
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    PresentedSSet::from_ordered_complex(&refs, &[first, second], DEFAULT_MAX_DIM.max(d))
}

/// Triangles named with their `[d0, d1, d2]` edge labels; edges sharing a label are identified.
pub(crate) type Triangle = (&'static str, [&'static str; 3]);

const PUNCTURED_TORUS: [Triangle; 4] = [
    ("s_y0x0", ["x0", "x0+y0", "y0"]),
    ("s_y0x1", ["x1", "x1+y0", "y0"]),
    ("s_x0y1", ["y1", "x0+y1", "x0"]),
    ("s_x1y1", ["y1", "x1+y1", "x1"]),
];

// Rows (XI, IX), (IZ, ZI), (XZ, ZX) and the first two columns of the square.
const MERMIN_STATE_DEP: [Triangle; 5] = [
    ("r1", ["IX", "XX", "XI"]),
    ("r2", ["ZI", "ZZ", "IZ"]),
    ("r3", ["ZX", "YY", "XZ"]),
    ("c1", ["IZ", "XZ", "XI"]),
    ("c2", ["ZI", "ZX", "IX"]),
];

/// Builds a 2-dimensional space from triangles, gluing equally labelled edges.
pub fn from_triangles(tris: &[(&str, [&str; 3])]) -> Result<PresentedSSet, SsetError> {
    let mut x = PresentedSSet::empty(DEFAULT_MAX_DIM);
    let mut by_label: BTreeMap<String, Vec<SimplexId>> = BTreeMap::new();
    for (name, [e0, e1, e2]) in tris {
        let v0 = x.add_vertex("");
        let v1 = x.add_vertex("");
        let v2 = x.add_vertex("");
        let d0 = x.add_simplex(*e0, vec![v2.into(), v1.into()])?;
        let d1 = x.add_simplex(*e1, vec![v2.into(), v0.into()])?;
        let d2 = x.add_simplex(*e2, vec![v1.into(), v0.into()])?;
        x.add_simplex(*name, vec![d0.into(), d1.into(), d2.into()])?;
        for (l, e) in [(e0, d0), (e1, d1), (e2, d2)] {
            by_label.entry(l.to_string()).or_default().push(e);
        }
    }
    let mut pairs = vec![];
    for edges in by_label.values() {
        for w in edges.windows(2) {
            pairs.push((SimplexRef::from(w[0]), SimplexRef::from(w[1])));
        }
    }
    let mut g = glue(&x, &pairs)?;
    for v in 0..g.count(0) {
        g.set_label(SimplexId::new(0, v), format!("v{v}"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(x: &PresentedSSet) -> Vec<usize> {
        (0..=x.top_dim()).map(|n| x.count(n)).collect()
    }

    fn euler(x: &PresentedSSet) -> i64 {
        (0..=x.max_dim()).map(|n| if n % 2 == 0 { 1 } else { -1 } * x.count(n) as i64).sum()
    }

    #[test]
    fn simplices_and_horns() {
        assert_eq!(counts(&builtin("delta(2)").unwrap()), vec![3, 3, 1]);
        assert_eq!(counts(&builtin("boundary_delta(3)").unwrap()), vec![4, 6, 4]);
        assert_eq!(counts(&builtin("horn(2,1)").unwrap()), vec![3, 2]);
        assert!(builtin("horn(2,5)").is_err());
        assert!(builtin("no_such_space").is_err());
    }

    #[test]
    fn circle_has_one_vertex_one_edge() {
        assert_eq!(counts(&builtin("circle").unwrap()), vec![1, 1]);
    }

    #[test]
    fn surfaces_have_expected_euler_characteristic() {
        let t = builtin("punctured_torus").unwrap();
        assert_eq!((t.count(1), t.count(2)), (8, 4));
        let torus = builtin("torus").unwrap();
        assert_eq!(counts(&torus), vec![3, 9, 6]);
        assert_eq!(euler(&torus), 0);
        let dep = builtin("mermin_square_state_dep").unwrap();
        assert_eq!(counts(&dep), vec![3, 9, 5]);
        assert_eq!(euler(&dep), -1);
        let indep = builtin("mermin_square_state_indep").unwrap();
        assert_eq!(counts(&indep), vec![3, 11, 7]);
        let l = indep.find_label("-II").unwrap();
        assert_eq!(indep.raw_face(l, 0), indep.raw_face(l, 1));
    }

    #[test]
    fn glued_triangle_shape() {
        let g = builtin("glued_triangle").unwrap();
        assert_eq!(counts(&g), vec![2, 2, 1]);
        let s = g.find_label("s").unwrap();
        assert_eq!(g.label(g.raw_face(s, 0).base), "e");
        assert_eq!(g.label(g.raw_face(s, 2).base), "x");
    }

    #[test]
    fn fine_spaces() {
        let h = builtin("space_H").unwrap();
        assert_eq!(counts(&h), vec![5, 9, 7]);
        let q = builtin("square_Q").unwrap();
        assert_eq!(counts(&q), vec![5, 8, 4]);
        let s = q.find_label("0'12").unwrap();
        let names: Vec<&str> = (0..3).map(|i| q.label(q.raw_face(s, i).base)).collect();
        assert_eq!(names, vec!["y0", "x1+y0", "x1"]);
        assert_eq!(counts(&builtin("space_A").unwrap()), vec![5, 7, 3]);
    }

    #[test]
    fn z_spaces() {
        let z = builtin("Z(3,2)").unwrap();
        assert_eq!(counts(&z), vec![5, 9, 7, 2]);
        let a = z.simplices(3).next().unwrap();
        let b = z.simplices(3).nth(1).unwrap();
        assert_eq!(z.raw_face(a, 1), z.raw_face(b, 1));
        let dm = builtin("Z(2,1)").unwrap();
        assert!(crate::sset::find_isomorphism(&dm, &builtin("diamond").unwrap()).is_some());
    }
}
