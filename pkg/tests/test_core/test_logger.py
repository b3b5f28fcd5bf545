from logging import getLogger

from ConfoundSens.core.logger import SensError, SensInfo, SensLogger, SensWarning


def test_exception():
    e = Exception('Exception test')
    assert SensLogger(None).add_exception(e).lines == ['Exception test']


def test_exception_multiline():
    e = Exception('Line1\nLine2\nLine3')
    assert SensLogger(None).add_exception(e).lines == ['Line1', 'Line2', 'Line3']


def test_format_args():
    assert SensLogger(None).add('r2={:.2f}', 0.5).add('{name}', name='t_1').lines == ['r2=0.50', 't_1']


def test_bool():
    for cls in (SensError, SensInfo, SensWarning):
        i = cls(getLogger('test')).add('')
        assert i
        assert i.dump()
        assert not i
        assert not i.dump()


def test_dump_lines(caplog):
    w = SensWarning(getLogger('ConfoundSens.Test'))
    w.add('first').add('second')
    w.dump()
    assert [r.getMessage() for r in caplog.records] == ['first', 'second']
    assert all(r.levelname == 'WARNING' for r in caplog.records)
