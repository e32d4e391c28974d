__all__ = ['scalars', 'algebra', 'derivations', 'conditions',
           'classification', 'isomorphism', 'kostant', 'berezin',
           'cli', 'utils']
