"""Reserved special tokens, pinned to ids 0-5 in every vocabulary."""

PAD = "[PAD]"
UNK = "[UNK]"
CLS = "[CLS]"
SEP = "[SEP]"
MASK = "[MASK]"
WB = "[WB]"  # word boundary, used by the lossless encoding mode

SPECIALS = (PAD, UNK, CLS, SEP, MASK, WB)

PAD_ID, UNK_ID, CLS_ID, SEP_ID, MASK_ID, WB_ID = range(len(SPECIALS))
