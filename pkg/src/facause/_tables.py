"""Reference minimum-cost solution tables for the built-in examples.

Each entry is a list of solution documents in the comparison schema:
``{"cost": n, "tables": [{"binary": "10", "rows": [{"state": [...],
"outcome": v}]}]}`` with tables sorted by binary string and rows sorted
by state.  MOVER_ALT_WEAK_SUFFICIENCY and MOVER_ALT_NO_INVARIANCE are
deliberately flawed mover assignments kept as negative test fixtures:
the first is cheaper but only valid without the sufficiency-ratio
filter, the second violates within-partition invariance.
"""

GROUND_TRUTH = {'forest-fire': [{'cost': 16,
                  'tables': [{'binary': '011',
                              'rows': [{'state': [0, 0, 0], 'outcome': 0},
                                       {'state': [0, 0, 1], 'outcome': 2},
                                       {'state': [1, 0, 0], 'outcome': 0}]},
                             {'binary': '101',
                              'rows': [{'state': [1, 0, 1], 'outcome': 2},
                                       {'state': [1, 1, 0], 'outcome': 0},
                                       {'state': [1, 1, 1], 'outcome': 2}]},
                             {'binary': '110',
                              'rows': [{'state': [0, 1, 0], 'outcome': 1},
                                       {'state': [0, 1, 1], 'outcome': 1}]}]},
                 {'cost': 16,
                  'tables': [{'binary': '011',
                              'rows': [{'state': [0, 0, 0], 'outcome': 0},
                                       {'state': [0, 0, 1], 'outcome': 2}]},
                             {'binary': '101',
                              'rows': [{'state': [1, 0, 0], 'outcome': 0},
                                       {'state': [1, 0, 1], 'outcome': 2},
                                       {'state': [1, 1, 0], 'outcome': 0},
                                       {'state': [1, 1, 1], 'outcome': 2}]},
                             {'binary': '110',
                              'rows': [{'state': [0, 1, 0], 'outcome': 1},
                                       {'state': [0, 1, 1], 'outcome': 1}]}]},
                 {'cost': 16,
                  'tables': [{'binary': '011',
                              'rows': [{'state': [0, 0, 0], 'outcome': 0},
                                       {'state': [0, 0, 1], 'outcome': 2},
                                       {'state': [1, 0, 0], 'outcome': 0},
                                       {'state': [1, 0, 1], 'outcome': 2}]},
                             {'binary': '101',
                              'rows': [{'state': [1, 1, 0], 'outcome': 0},
                                       {'state': [1, 1, 1], 'outcome': 2}]},
                             {'binary': '110',
                              'rows': [{'state': [0, 1, 0], 'outcome': 1},
                                       {'state': [0, 1, 1], 'outcome': 1}]}]},
                 {'cost': 16,
                  'tables': [{'binary': '011',
                              'rows': [{'state': [0, 0, 0], 'outcome': 0},
                                       {'state': [0, 0, 1], 'outcome': 2},
                                       {'state': [1, 0, 1], 'outcome': 2}]},
                             {'binary': '101',
                              'rows': [{'state': [1, 0, 0], 'outcome': 0},
                                       {'state': [1, 1, 0], 'outcome': 0},
                                       {'state': [1, 1, 1], 'outcome': 2}]},
                             {'binary': '110',
                              'rows': [{'state': [0, 1, 0], 'outcome': 1},
                                       {'state': [0, 1, 1], 'outcome': 1}]}]}],
 'gang-execution': [{'cost': 2,
                     'tables': [{'binary': '01',
                                 'rows': [{'state': [0, 0], 'outcome': 0},
                                          {'state': [1, 1], 'outcome': 1}]}]}],
 'halt-and-charge': [{'cost': 8,
                      'tables': [{'binary': '10',
                                  'rows': [{'state': [0, 0], 'outcome': 0},
                                           {'state': [0, 1], 'outcome': 0},
                                           {'state': [1, 0], 'outcome': 1},
                                           {'state': [1, 1], 'outcome': 1}]},
                                 {'binary': '11',
                                  'rows': [{'state': [2, 0], 'outcome': 0},
                                           {'state': [2, 1], 'outcome': 1}]}]}],
 'binary-and': [{'cost': 5,
                 'tables': [{'binary': '01',
                             'rows': [{'state': [1, 0], 'outcome': 0},
                                      {'state': [1, 1], 'outcome': 1}]},
                            {'binary': '10', 'rows': [{'state': [0, 1], 'outcome': 0}]},
                            {'binary': '11', 'rows': [{'state': [0, 0], 'outcome': 0}]}]},
                {'cost': 5,
                 'tables': [{'binary': '01', 'rows': [{'state': [1, 0], 'outcome': 0}]},
                            {'binary': '10',
                             'rows': [{'state': [0, 1], 'outcome': 0},
                                      {'state': [1, 1], 'outcome': 1}]},
                            {'binary': '11', 'rows': [{'state': [0, 0], 'outcome': 0}]}]}],
 'binary-or': [{'cost': 5,
                'tables': [{'binary': '01',
                            'rows': [{'state': [0, 0], 'outcome': 0},
                                     {'state': [0, 1], 'outcome': 1}]},
                           {'binary': '10', 'rows': [{'state': [1, 0], 'outcome': 1}]},
                           {'binary': '11', 'rows': [{'state': [1, 1], 'outcome': 1}]}]},
               {'cost': 5,
                'tables': [{'binary': '01', 'rows': [{'state': [0, 1], 'outcome': 1}]},
                           {'binary': '10',
                            'rows': [{'state': [0, 0], 'outcome': 0},
                                     {'state': [1, 0], 'outcome': 1}]},
                           {'binary': '11', 'rows': [{'state': [1, 1], 'outcome': 1}]}]}],
 'binary-xor': [{'cost': 4,
                 'tables': [{'binary': '01',
                             'rows': [{'state': [0, 1], 'outcome': 1},
                                      {'state': [1, 0], 'outcome': 1}]},
                            {'binary': '10',
                             'rows': [{'state': [0, 0], 'outcome': 0},
                                      {'state': [1, 1], 'outcome': 0}]}]},
                {'cost': 4,
                 'tables': [{'binary': '01',
                             'rows': [{'state': [0, 0], 'outcome': 0},
                                      {'state': [1, 1], 'outcome': 0}]},
                            {'binary': '10',
                             'rows': [{'state': [0, 1], 'outcome': 1},
                                      {'state': [1, 0], 'outcome': 1}]}]}],
 'rock-throwing': [{'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0010',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0010',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0}]},
                               {'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0}]},
                               {'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 0], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 0], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 0], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 0], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0010',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1}]}]},
                   {'cost': 4,
                    'tables': [{'binary': '0001',
                                'rows': [{'state': [0, 0, 1, 1], 'outcome': 1}]},
                               {'binary': '0100',
                                'rows': [{'state': [0, 0, 0, 0], 'outcome': 0},
                                         {'state': [1, 1, 0, 1], 'outcome': 1}]},
                               {'binary': '1000',
                                'rows': [{'state': [1, 1, 0, 0], 'outcome': 1}]}]}],
 'switching-tracks': [{'cost': 4,
                       'tables': [{'binary': '100',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0},
                                            {'state': [1, 1, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0},
                                            {'state': [1, 1, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0},
                                            {'state': [1, 1, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0},
                                            {'state': [1, 1, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [1, 0, 2], 'outcome': 0},
                                            {'state': [1, 1, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [0, 1, 1], 'outcome': 1}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [0, 1, 1], 'outcome': 1}]},
                                  {'binary': '100',
                                   'rows': [{'state': [1, 0, 2], 'outcome': 0},
                                            {'state': [1, 1, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0},
                                            {'state': [1, 1, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 1, 1], 'outcome': 1}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 1, 1], 'outcome': 1}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0},
                                            {'state': [1, 1, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [1, 1, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [1, 1, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [1, 1, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [1, 1, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 1, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [1, 0, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 1, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 1, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [1, 0, 2], 'outcome': 0}]}]},
                      {'cost': 4,
                       'tables': [{'binary': '001',
                                   'rows': [{'state': [1, 0, 2], 'outcome': 0}]},
                                  {'binary': '100',
                                   'rows': [{'state': [0, 0, 0], 'outcome': 1},
                                            {'state': [0, 1, 1], 'outcome': 1},
                                            {'state': [1, 1, 2], 'outcome': 0}]}]}],
 'mover-1d': [{'cost': 14,
               'tables': [{'binary': '10',
                           'rows': [{'state': [0, 0], 'outcome': 1},
                                    {'state': [0, 2], 'outcome': 1},
                                    {'state': [1, 0], 'outcome': 2},
                                    {'state': [1, 1], 'outcome': 2},
                                    {'state': [2, 0], 'outcome': 3},
                                    {'state': [2, 1], 'outcome': 3},
                                    {'state': [2, 2], 'outcome': 3},
                                    {'state': [3, 0], 'outcome': 4},
                                    {'state': [3, 1], 'outcome': 4},
                                    {'state': [3, 2], 'outcome': 4}]},
                          {'binary': '11',
                           'rows': [{'state': [0, 1], 'outcome': 0},
                                    {'state': [1, 2], 'outcome': 1}]}]}]}

MOVER_ALT_WEAK_SUFFICIENCY = {'cost': 12,
 'tables': [{'binary': '01',
             'rows': [{'state': [0, 0], 'outcome': 1},
                      {'state': [0, 2], 'outcome': 1},
                      {'state': [1, 1], 'outcome': 2},
                      {'state': [1, 2], 'outcome': 1}]},
            {'binary': '10',
             'rows': [{'state': [0, 1], 'outcome': 0},
                      {'state': [1, 0], 'outcome': 2},
                      {'state': [2, 0], 'outcome': 3},
                      {'state': [2, 1], 'outcome': 3},
                      {'state': [2, 2], 'outcome': 3},
                      {'state': [3, 0], 'outcome': 4},
                      {'state': [3, 1], 'outcome': 4},
                      {'state': [3, 2], 'outcome': 4}]}]}

MOVER_ALT_NO_INVARIANCE = {'cost': 13,
 'tables': [{'binary': '01', 'rows': [{'state': [1, 2], 'outcome': 1}]},
            {'binary': '10',
             'rows': [{'state': [0, 0], 'outcome': 1},
                      {'state': [0, 1], 'outcome': 0},
                      {'state': [1, 0], 'outcome': 2},
                      {'state': [1, 1], 'outcome': 2},
                      {'state': [2, 0], 'outcome': 3},
                      {'state': [2, 1], 'outcome': 3},
                      {'state': [2, 2], 'outcome': 3},
                      {'state': [3, 0], 'outcome': 4},
                      {'state': [3, 1], 'outcome': 4},
                      {'state': [3, 2], 'outcome': 4}]},
            {'binary': '11', 'rows': [{'state': [0, 2], 'outcome': 1}]}]}
