//! `serialize_with` helpers writing exact rationals as `"p/q"` strings.

use num_complex::Complex;
use num_rational::BigRational;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::Serializer;

use crate::scalar::format_rational;

type Q = BigRational;

pub fn scalar<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

pub fn option<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(q) => s.serialize_some(&format_rational(q)),
        None => s.serialize_none(),
    }
}

pub fn vec<S: Serializer>(x: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(format_rational))
}

pub fn matrix<S: Serializer>(x: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(x.len()))?;
    for row in x {
        seq.serialize_element(&row.iter().map(format_rational).collect::<Vec<_>>())?;
    }
    seq.end()
}

struct C<'a>(&'a Complex<Q>);

impl serde::Serialize for C<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Complex", 2)?;
        st.serialize_field("re", &format_rational(&self.0.re))?;
        st.serialize_field("im", &format_rational(&self.0.im))?;
        st.end()
    }
}

pub fn complex<S: Serializer>(x: &Complex<Q>, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&C(x), s)
}

pub fn complex_vec<S: Serializer>(x: &[Complex<Q>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(C))
}

pub fn complex_matrix<S: Serializer>(x: &[Vec<Complex<Q>>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(x.len()))?;
    for row in x {
        seq.serialize_element(&row.iter().map(C).collect::<Vec<_>>())?;
    }
    seq.end()
}
