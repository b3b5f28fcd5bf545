from string import Template


def get_default_logfile(log_file: str = 'ConfoundSens.log') -> str:
    template = Template("""
formatters:
  ConfoundSens_format:
    format: '[%(asctime)s] [%(name)25s] %(levelname)8s | %(message)s'

  Console_format:
    format: '%(levelname)-8s | %(message)s'

handlers:
  # There are several Handlers available:
  #  - logging.handlers.RotatingFileHandler:
  #    Will rotate when the file reaches a certain size (see python logging documentation for args)
  #  - More handlers:
  #    https://docs.python.org/3/library/logging.handlers.html#rotatingfilehandler

  ConfoundSens_default:
    class: logging.handlers.RotatingFileHandler
    filename: '${LOG_FILE}'
    maxBytes: 1_048_576
    backupCount: 3

    formatter: ConfoundSens_format
    level: DEBUG

  Console:
    class: logging.StreamHandler
    stream: ext://sys.stderr
    formatter: Console_format
    level: INFO


loggers:
  ConfoundSens:
    level: INFO
    handlers:
      - ConfoundSens_default
      - Console
    propagate: False

""")
    return template.substitute(LOG_FILE=log_file)
