import ruamel.yaml

yml = ruamel.yaml.YAML()
yml.default_flow_style = False
yml.default_style = False    # type: ignore
yml.width = 1000000          # type: ignore
yml.allow_unicode = True
yml.sort_base_mapping_type_on_output = False     # type: ignore

# safe loader for files we only read (logging.yml, parameter files)
yml_safe = ruamel.yaml.YAML(typ='safe')
yml_safe.default_flow_style = False
yml_safe.default_style = False    # type: ignore
yml_safe.width = 1000000          # type: ignore
yml_safe.allow_unicode = True
yml_safe.sort_base_mapping_type_on_output = False    # type: ignore
