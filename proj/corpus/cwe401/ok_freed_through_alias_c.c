int cwe401_ok_freed_through_alias_c_main(int c) {
  char *p = calloc(4, 4);
  char *q = p;
  free(q);
  return 0;
}
