//! Shorthands on an abstract basis `(theta^0..theta^9) = (e^0..e^3, gamma^4..gamma^9)`:
//! `e^(4)`, `e^(3)_a = iota_a e^(4)`, `e^(2)_{ab} = iota_b iota_a e^(4)`, and likewise
//! `gamma^(6)`, `gamma^(5)_i`, `gamma^(4)_{ij}` (fiber indices `i` in `0..6`).

use crate::FormValue;

fn contract_all(mut f: FormValue, idx: &[usize]) -> FormValue {
    for &i in idx {
        f = f.contract_basis(i).expect("contracting below degree zero");
    }
    f
}

pub fn e1(a: usize) -> FormValue {
    FormValue::basis1(a)
}

pub fn e4() -> FormValue {
    FormValue::basis(&[0, 1, 2, 3])
}

pub fn e3(a: usize) -> FormValue {
    contract_all(e4(), &[a])
}

pub fn e2(a: usize, b: usize) -> FormValue {
    contract_all(e4(), &[a, b])
}

pub fn gamma1(i: usize) -> FormValue {
    FormValue::basis1(4 + i)
}

pub fn gamma6() -> FormValue {
    FormValue::basis(&[4, 5, 6, 7, 8, 9])
}

pub fn gamma5(i: usize) -> FormValue {
    contract_all(gamma6(), &[4 + i])
}

pub fn gamma4(i: usize, j: usize) -> FormValue {
    contract_all(gamma6(), &[4 + i, 4 + j])
}
