"""Walk through one small instance end to end.

Build the skew Paley conference matrix of order 8, look at its 4x4 principal
minors, pull out the blocks for each value, and compare the exhaustive counts
with what the coefficient formula predicts.
"""
from minor_designs import constructions as C
from minor_designs.designs import extract_blocks, five_subset_property, render_parameters, verify_t_design
from minor_designs.minors import minor_spectrum
from minor_designs.predictor import check_des_hypotheses, predict_lambda


def main():
    S = C.paley_conference(7)
    print(f"order {S.n}, symmetry {S.symmetry}")

    spec = minor_spectrum(S, 4)
    print("4x4 minors:", spec.to_dict())

    status = check_des_hypotheses(S, 4, 3)
    print("two values and constant coefficients:", status.satisfied, "c0 =", status.constants[0])

    for a in spec.values():
        blocks = extract_blocks(S, 4, a)
        report = verify_t_design(blocks, 3)
        pred = predict_lambda(S, 4, 3, a, status=status)
        print(f"  a={a}: {len(blocks)} blocks, {render_parameters(report)}, predicted lambda {pred.expected['lambda']}")

    ok, witness = five_subset_property(extract_blocks(S, 4, 9))
    print("every 5-subset holds 0 or 2 blocks:", ok, witness or "")


if __name__ == "__main__":
    main()
