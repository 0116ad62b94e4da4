use crate::engine::{bit_output, Action, LocalView, Strategy};
use crate::games::Game;

/// Both players feed their input into one NLB and output what comes back.
pub fn chsh_nlb() -> Strategy {
    let mut b = Strategy::builder("chsh-nlb", Game::Chsh.signature());
    let nlb = b.nlb(0, 1);
    for party in 0..2 {
        b.program(party, move |v: &LocalView<'_>| match v.nlb_output(nlb) {
            None => Action::submit(vec![(nlb, v.input_bit())]),
            Some(z) => bit_output(z),
        });
    }
    b.build().expect("valid construction")
}

/// One NLB simulated with a shared uniform bit `r` and one bit of
/// communication: Alice sends `a` and outputs `r`; Bob outputs
/// `r ^ (a & b)`.
pub fn nlb_via_comm() -> Strategy {
    let mut b = Strategy::builder("nlb-via-comm", Game::Chsh.signature());
    let ch = b.channel(0, 1);
    b.shared(2, "free bit r");
    b.program(0, move |v: &LocalView<'_>| {
        if v.round() == 0 {
            Action::send(vec![(ch, v.input_bit())])
        } else {
            bit_output(v.shared() == 1)
        }
    });
    b.program(1, move |v: &LocalView<'_>| match v.received(ch) {
        None => Action::idle(),
        Some(a) => bit_output(nlb_via_comm_eval(a, v.input_bit(), v.shared() == 1).1),
    });
    b.build().expect("valid construction")
}

/// The pure function [`nlb_via_comm`] realizes; identical to
/// [`crate::engine::nlb_evaluate`].
pub fn nlb_via_comm_eval(a: bool, b: bool, r: bool) -> (bool, bool) {
    (r, r ^ (a & b))
}
