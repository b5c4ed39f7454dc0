"""Word vector-space toolkit.

Pipeline: preprocess raw text, build a vocabulary, train skip-gram or CBOW
embeddings (hierarchical softmax and/or negative sampling), query the model
by cosine distance or vector-offset analogy, and score relation retrieval
against a gold standard of subject-predicate-object triples.
"""

from .corpus import (MultiwordDictionary, PreprocessStats, load_multiword_dictionary,
                     merge_multiwords, normalize_text, preprocess_corpus, preprocess_text)
from .errors import (ConfigError, EvaluationError, FormatError, InputError,
                     WordNotFoundError, WordspaceError, ZeroVectorError)
from .evaluate import (EvalRow, compare_tools, evaluate_relationship, run_sweep,
                       write_report_csv)
from .model import CBOW, SKIP_GRAM, EmbeddingModel, TrainingConfig, init_model
from .modelio import load_model, save_model
from .query import analogy_query, cosine, distance_query
from .relations import GoldStandard, RelationTriple, load_gold_standard
from .sigmoid import build_sigmoid_table, sigmoid, table_sigmoid
from .trainer import TrainStats, encode_corpus, train, train_encoded
from .vocab import (HuffmanCoding, UnigramTable, Vocabulary, build_huffman,
                    build_unigram_table, build_vocabulary, keep_probability)

__version__ = "0.1.0"
