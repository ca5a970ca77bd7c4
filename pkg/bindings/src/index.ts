export {
  BoundTokenizer,
  VocabFormatError,
  type ChunkWindow,
  type Mode,
  type TokenizerOptions,
  type VocabInfo,
} from "./tokenizer.js";
