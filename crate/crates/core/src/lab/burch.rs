use crate::error::{Error, Result};
use crate::groebner::Ideal;

/// `I` is Burch when `mI != m(I : m)`.
pub fn burch_check(i: &Ideal) -> Result<bool> {
    if i.is_unit() {
        return Err(Error::ImproperIdeal);
    }
    let m = Ideal::maximal(i.ring());
    let mi = m.product(i)?;
    let mq = m.product(&i.quotient(&m)?)?;
    Ok(!mi.equals(&mq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_ring;

    #[test]
    fn burch_examples() {
        let s = make_ring(&["x", "y", "z"], &[], 32003).unwrap();
        let xy = Ideal::parse(&s, &["x", "y"]).unwrap();
        assert!(!burch_check(&xy).unwrap());
        assert!(!burch_check(&Ideal::parse(&s, &["x"]).unwrap()).unwrap());
        let m = Ideal::maximal(&s);
        assert!(burch_check(&m).unwrap());
        assert!(burch_check(&m.product(&m).unwrap()).unwrap());
        assert!(burch_check(&Ideal::unit(&s)).is_err());
    }
}
